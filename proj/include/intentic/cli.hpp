#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace intentic::cli {

enum Exit : int {
  kOk = 0,
  kInvalid = 1,
  kExhausted = 2,
  kParseError = 3,
  kConfigError = 4,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace intentic::cli
