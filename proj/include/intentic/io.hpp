#pragma once

#include <json.hpp>
#include <string>

#include "intentic/kernel.hpp"
#include "intentic/states.hpp"
#include "intentic/transform.hpp"
#include "intentic/truthmaking.hpp"

namespace intentic::io {

using json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

// Malformed structured input. Formula syntax errors surface as ParseError.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parsing context: a signature that open mode may extend, and the registry
// that gives meaning to #k.
struct Context {
  Signature& sig;
  const WitnessRegistry& reg;
};

Term parse_term(const std::string& text, const Context& ctx);

json to_json(const Proof& p);
Proof proof_from_json(const json& j, const Context& ctx);

json to_json(const IntenticState& u);
StatePtr state_from_json(const json& j, const Context& ctx);

json to_json(const MTWitness& w);
MTWitness witness_from_json(const json& j, const Context& ctx);

json to_json(const FineCert& c);
FineCert cert_from_json(const json& j);

// Top-level documents carry format_version and a payload key.
json document(const char* key, json payload);
// Accepts a wrapped document or a bare payload.
const json& payload(const json& doc, const char* key);

json signature_to_json(const Signature& sig);
Signature signature_from_json(const json& j);

}  // namespace intentic::io
