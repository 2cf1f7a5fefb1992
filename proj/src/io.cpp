#include "intentic/io.hpp"

#include <cctype>

namespace intentic::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw FormatError(what); }

const json& field(const json& j, const char* name) {
  if (!j.is_object()) bad(std::string("expected an object with field '") + name + "'");
  auto it = j.find(name);
  if (it == j.end()) bad(std::string("missing field '") + name + "'");
  return *it;
}

std::string string_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_string()) bad(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

std::size_t index_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_unsigned()) bad(std::string("field '") + name + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

const json& array_field(const json& j, const char* name, bool required = true) {
  static const json empty = json::array();
  if (!required && (!j.is_object() || !j.contains(name))) return empty;
  const json& v = field(j, name);
  if (!v.is_array()) bad(std::string("field '") + name + "' must be an array");
  return v;
}

Formula formula(const std::string& text, const Context& ctx) { return parse_formula(text, ctx.sig, ctx.reg); }

}  // namespace

Term parse_term(const std::string& text, const Context& ctx) {
  if (text.empty()) bad("empty term");
  if (text[0] == '#') {
    std::size_t used = 0;
    unsigned long id = 0;
    try {
      id = std::stoul(text.substr(1), &used);
    } catch (const std::exception&) {
      bad("bad witness constant '" + text + "'");
    }
    if (used + 1 != text.size()) bad("bad witness constant '" + text + "'");
    if (!ctx.reg.contains(static_cast<std::uint32_t>(id))) bad("unknown witness constant " + text);
    return Term::witness_constant(static_cast<std::uint32_t>(id));
  }
  if (ctx.sig.has_constant(text)) return Term::constant(text);
  if (std::islower(static_cast<unsigned char>(text[0]))) return Term::variable(text);
  bad("unknown constant '" + text + "'");
}

json to_json(const Proof& p) {
  json j;
  j["rule"] = std::string(rule_name(p.rule()));
  const auto& ann = p.annotations();
  if (p.rule() == Rule::Lem) {
    j["instance"] = to_string(p.conclusion().lhs());
    return j;
  }
  j["conclusion"] = to_string(p.conclusion());
  if (p.rule() == Rule::Assume) {
    if (!ann.label.empty()) j["label"] = ann.label;
    return j;
  }
  if (ann.discharge.size() == 1) j["discharge"] = ann.discharge.front();
  if (ann.discharge.size() > 1) j["discharge"] = ann.discharge;
  if (ann.var) j["var"] = *ann.var;
  if (ann.witness) j["witness"] = ann.witness->text();
  json prem = json::array();
  for (const auto& q : p.premises()) prem.push_back(to_json(q));
  j["premises"] = std::move(prem);
  return j;
}

Proof proof_from_json(const json& j, const Context& ctx) {
  std::string name = string_field(j, "rule");
  auto rule = rule_from_name(name);
  if (!rule) bad("unknown rule '" + name + "'");
  if (*rule == Rule::Lem) {
    Formula instance = formula(string_field(j, "instance"), ctx);
    Proof p = Proof::lem(instance);
    if (j.contains("conclusion") && formula(string_field(j, "conclusion"), ctx) != p.conclusion())
      bad("lem conclusion does not match its instance");
    return p;
  }
  Formula conclusion = formula(string_field(j, "conclusion"), ctx);
  ProofAnnotations ann;
  if (*rule == Rule::Assume) {
    if (j.contains("label")) ann.label = string_field(j, "label");
    if (j.contains("premises") && !array_field(j, "premises").empty()) bad("assume takes no premises");
    return Proof::node(*rule, std::move(conclusion), {}, std::move(ann));
  }
  if (j.contains("discharge")) {
    const json& d = j["discharge"];
    if (d.is_string()) {
      ann.discharge.push_back(d.get<std::string>());
    } else if (d.is_array()) {
      for (const auto& x : d) {
        if (!x.is_string()) bad("discharge labels must be strings");
        ann.discharge.push_back(x.get<std::string>());
      }
    } else {
      bad("discharge must be a string or an array of strings");
    }
  }
  if (j.contains("var")) ann.var = string_field(j, "var");
  if (j.contains("witness")) ann.witness = parse_term(string_field(j, "witness"), ctx);
  std::vector<Proof> premises;
  for (const auto& q : array_field(j, "premises")) premises.push_back(proof_from_json(q, ctx));
  return Proof::node(*rule, std::move(conclusion), std::move(premises), std::move(ann));
}

json to_json(const IntenticState& u) {
  json j;
  json base = json::array();
  for (const auto& g : u.base().generators()) base.push_back(to_string(g));
  j["base"] = std::move(base);
  json kids = json::array();
  for (const auto& e : u.children()) {
    json k;
    k["hypothesis"] = to_string(e.hypothesis);
    k["state"] = to_json(*e.child);
    json conn = json::array();
    for (const auto& p : e.connection) conn.push_back(to_json(p));
    k["connection"] = std::move(conn);
    kids.push_back(std::move(k));
  }
  j["children"] = std::move(kids);
  return j;
}

StatePtr state_from_json(const json& j, const Context& ctx) {
  std::vector<Formula> base;
  for (const auto& g : array_field(j, "base")) {
    if (!g.is_string()) bad("base generators must be formula strings");
    base.push_back(formula(g.get<std::string>(), ctx));
  }
  std::vector<Edge> edges;
  for (const auto& k : array_field(j, "children", false)) {
    Edge e;
    e.hypothesis = formula(string_field(k, "hypothesis"), ctx);
    e.child = state_from_json(field(k, "state"), ctx);
    for (const auto& p : array_field(k, "connection", false)) e.connection.push_back(proof_from_json(p, ctx));
    edges.push_back(std::move(e));
  }
  // Written files list children in canonical order, so edge indices in
  // witnesses survive a round trip. Hand-written files are re-sorted.
  return IntenticState::make(BasicState(std::move(base)), std::move(edges));
}

json to_json(const MTWitness& w) {
  json j;
  json steps = json::array();
  for (const auto& st : w.steps) {
    json s;
    s["edge"] = st.edge;
    s["antecedent"] = to_string(st.antecedent);
    json conn = json::array();
    for (const auto& p : st.connection) conn.push_back(to_json(p));
    s["connection"] = std::move(conn);
    s["consequent"] = to_json(st.consequent);
    steps.push_back(std::move(s));
  }
  j["steps"] = std::move(steps);
  j["closing"] = to_json(w.closing);
  return j;
}

MTWitness witness_from_json(const json& j, const Context& ctx) {
  MTWitness w;
  for (const auto& s : array_field(j, "steps", false)) {
    ChildStep st;
    st.edge = index_field(s, "edge");
    st.antecedent = formula(string_field(s, "antecedent"), ctx);
    for (const auto& p : array_field(s, "connection", false)) st.connection.push_back(proof_from_json(p, ctx));
    st.consequent = witness_from_json(field(s, "consequent"), ctx);
    w.steps.push_back(std::move(st));
  }
  w.closing = proof_from_json(field(j, "closing"), ctx);
  return w;
}

json to_json(const FineCert& c) {
  json m = json::array();
  for (const auto& x : c.matches) {
    json e;
    e["target"] = x.target;
    e["sub"] = to_json(x.sub);
    m.push_back(std::move(e));
  }
  json j;
  j["matches"] = std::move(m);
  return j;
}

FineCert cert_from_json(const json& j) {
  FineCert c;
  for (const auto& x : array_field(j, "matches")) c.matches.push_back({index_field(x, "target"), cert_from_json(field(x, "sub"))});
  return c;
}

json document(const char* key, json payload) {
  json j;
  j["format_version"] = kFormatVersion;
  j[key] = std::move(payload);
  return j;
}

const json& payload(const json& doc, const char* key) {
  if (doc.is_object() && doc.contains("format_version")) {
    const json& v = doc["format_version"];
    if (!v.is_number_integer() || v.get<int>() != kFormatVersion)
      bad("unsupported format_version " + v.dump());
  }
  if (doc.is_object() && doc.contains(key)) return doc[key];
  return doc;
}

json signature_to_json(const Signature& sig) {
  json j;
  json rels = json::object();
  for (const auto& [name, arity] : sig.relations()) rels[name] = arity;
  j["relations"] = std::move(rels);
  j["constants"] = sig.constants();
  j["open"] = sig.is_open();
  return j;
}

Signature signature_from_json(const json& j) {
  Signature sig;
  try {
    if (j.contains("relations")) {
      const json& r = j["relations"];
      if (r.is_object()) {
        for (const auto& [name, arity] : r.items()) {
          if (!arity.is_number_integer() || arity.get<int>() < 0) bad("arity of " + name + " must be >= 0");
          sig.add_relation(name, arity.get<int>());
        }
      } else if (r.is_array()) {
        for (const auto& x : r) sig.add_relation(string_field(x, "name"), static_cast<int>(index_field(x, "arity")));
      } else {
        bad("relations must be an object or an array");
      }
    }
    for (const auto& c : array_field(j, "constants", false)) {
      if (!c.is_string()) bad("constants must be strings");
      sig.add_constant(c.get<std::string>());
    }
  } catch (const std::invalid_argument& e) {
    bad(e.what());
  }
  if (j.contains("open")) {
    if (!j["open"].is_boolean()) bad("open must be a boolean");
    sig.set_open(j["open"].get<bool>());
  }
  return sig;
}

}  // namespace intentic::io
