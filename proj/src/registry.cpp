#include <algorithm>
#include <sstream>

#include "intentic/syntax.hpp"

namespace intentic {

namespace {

const std::string& sole_free_variable(const Formula& f) {
  if (f.free_vars().size() != 1)
    throw std::invalid_argument("witness formula must have exactly one free variable, found " +
                                std::to_string(f.free_vars().size()) + ": " + to_string(f));
  return f.free_vars().front();
}

}  // namespace

// The free variable is renamed to a name the parser can never produce, so
// P(x) and P(y) share a key.
std::string WitnessRegistry::lookup_key(const Formula& f, const std::string& var) {
  return substitute(f, var, Term::variable("$")).key();
}

unsigned WitnessRegistry::layer_for(const Formula& f) const {
  std::set<std::string> base;
  std::set<std::uint32_t> witnesses;
  f.collect_constants(base, witnesses);
  unsigned layer = 0;
  for (auto id : witnesses) {
    if (!contains(id)) throw std::invalid_argument("unknown witness constant #" + std::to_string(id));
    layer = std::max(layer, entries_[id].layer);
  }
  return layer + 1;
}

std::uint32_t WitnessRegistry::append(const Formula& f) {
  const std::string& var = sole_free_variable(f);
  unsigned layer = layer_for(f);
  auto id = static_cast<std::uint32_t>(entries_.size());
  entries_.push_back({f, var, layer});
  canonical_.emplace(lookup_key(f, var), id);
  return id;
}

std::uint32_t WitnessRegistry::register_witness(const Formula& f) {
  if (auto id = lookup(f)) return *id;
  return append(f);
}

std::uint32_t WitnessRegistry::register_variant(const Formula& f) { return append(f); }

std::optional<std::uint32_t> WitnessRegistry::lookup(const Formula& f) const {
  if (f.free_vars().size() != 1) return std::nullopt;
  auto it = canonical_.find(lookup_key(f, f.free_vars().front()));
  if (it == canonical_.end()) return std::nullopt;
  return it->second;
}

const WitnessEntry& WitnessRegistry::entry(std::uint32_t id) const {
  if (!contains(id)) throw std::out_of_range("unknown witness constant #" + std::to_string(id));
  return entries_[id];
}

Formula WitnessRegistry::instance(std::uint32_t id) const {
  const auto& e = entry(id);
  return substitute(e.formula, e.variable, Term::witness_constant(id));
}

std::string WitnessRegistry::to_tsv() const {
  std::string out;
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    out += std::to_string(k);
    out += '\t';
    out += std::to_string(entries_[k].layer);
    out += '\t';
    out += to_string(entries_[k].formula);
    out += '\n';
  }
  return out;
}

WitnessRegistry WitnessRegistry::from_tsv(std::string_view text, Signature& sig) {
  WitnessRegistry reg;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto t1 = line.find('\t');
    auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) throw ParseError(0, "registry line " + std::to_string(lineno) + ": expected 3 fields");
    std::size_t k = 0;
    unsigned layer = 0;
    try {
      k = std::stoul(line.substr(0, t1));
      layer = static_cast<unsigned>(std::stoul(line.substr(t1 + 1, t2 - t1 - 1)));
    } catch (const std::exception&) {
      throw ParseError(0, "registry line " + std::to_string(lineno) + ": bad id or layer");
    }
    if (k != reg.size())
      throw ParseError(0, "registry line " + std::to_string(lineno) + ": ids must be consecutive from 0");
    Formula f = parse_formula(line.substr(t2 + 1), sig, reg);
    std::uint32_t id = 0;
    try {
      // An alpha-variant of an earlier entry is a deliberate fresh variant.
      id = reg.lookup(f) ? reg.register_variant(f) : reg.register_witness(f);
    } catch (const std::invalid_argument& e) {
      throw ParseError(0, "registry line " + std::to_string(lineno) + ": " + e.what());
    }
    if (reg.entry(id).layer != layer)
      throw ParseError(0, "registry line " + std::to_string(lineno) + ": layer " + std::to_string(layer) +
                              " does not match computed layer " + std::to_string(reg.entry(id).layer));
  }
  return reg;
}

}  // namespace intentic
