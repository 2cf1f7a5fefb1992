#include "intentic/truthmaking.hpp"

#include <algorithm>

namespace intentic {

MTWitness base_witness(const Formula& generator) { return {{}, nd::assume(generator)}; }

MTWitness child_witness(const IntenticState& u, std::size_t edge, const Formula& antecedent, MTWitness consequent) {
  if (edge >= u.children().size()) throw std::out_of_range("edge index out of range");
  ChildStep step;
  step.edge = edge;
  step.antecedent = antecedent;
  step.consequent = std::move(consequent);
  Formula imp = step.implication();
  MTWitness w;
  w.steps.push_back(std::move(step));
  w.closing = nd::assume(imp);
  return w;
}

namespace {

void check_at(const IntenticState& u, const Formula& phi, const MTWitness& w, const WitnessRegistry& reg,
              const std::string& path) {
  std::vector<Formula> allowed = u.base().generators();
  for (std::size_t i = 0; i < w.steps.size(); ++i) {
    const ChildStep& st = w.steps[i];
    std::string at = path + ".step." + std::to_string(i);
    if (st.edge >= u.children().size())
      throw Rejected(at, "child step: edge " + std::to_string(st.edge) + " does not exist");
    const IntenticState& s = *u.children()[st.edge].child;
    const auto& gens = s.base().generators();
    if (st.connection.empty()) {
      for (const auto& g : gens)
        if (!u.base().contains(g) && g != st.antecedent)
          throw Rejected(at, "child step: child generator " + to_string(g) +
                                 " is neither a parent generator nor the antecedent");
    } else {
      if (st.connection.size() != gens.size())
        throw Rejected(at, "child step: expected " + std::to_string(gens.size()) + " connection proofs");
      for (std::size_t j = 0; j < gens.size(); ++j) {
        std::string cat = at + ".connection." + std::to_string(j);
        Judgment jd;
        try {
          jd = check_proof(st.connection[j], Logic::NonHypothetical, reg);
        } catch (const Rejected& r) {
          throw Rejected(cat + "/" + r.path(), "child step: " + r.reason());
        }
        if (jd.conclusion != gens[j]) throw Rejected(cat, "child step: connection proves the wrong generator");
        for (const auto& a : jd.open_assumptions)
          if (!u.base().contains(a) && a != st.antecedent)
            throw Rejected(cat, "child step: connection assumes " + to_string(a));
      }
    }
    if (st.consequent.closing.empty()) throw Rejected(at, "child step: consequent witness has no closing proof");
    check_at(s, st.consequent.formula(), st.consequent, reg, at + ".consequent");
    allowed.push_back(st.implication());
  }
  std::string at = path + ".closing";
  if (w.closing.empty()) throw Rejected(at, "closing: missing closing proof");
  Judgment jd;
  try {
    jd = check_proof(w.closing, Logic::NonHypothetical, reg);
  } catch (const Rejected& r) {
    throw Rejected(at + "/" + r.path(), "closing: " + r.reason());
  }
  if (jd.conclusion != phi)
    throw Rejected(at, "closing: closing proof concludes " + to_string(jd.conclusion) + ", expected " +
                           to_string(phi));
  for (const auto& a : jd.open_assumptions)
    if (std::find(allowed.begin(), allowed.end(), a) == allowed.end())
      throw Rejected(at, "closing: open assumption " + to_string(a) +
                             " is neither a generator nor a child-step implication");
}

}  // namespace

void check_mt_witness(const IntenticState& u, const Formula& phi, const MTWitness& w, const WitnessRegistry& reg) {
  check_at(u, phi, w, reg, "mt");
}

bool accepts_mt_witness(const IntenticState& u, const Formula& phi, const MTWitness& w, const WitnessRegistry& reg) {
  try {
    check_mt_witness(u, phi, w, reg);
    return true;
  } catch (const Rejected&) {
    return false;
  }
}

MTWitness transport_fine(const MTWitness& w, const FineCert& cert) {
  MTWitness out;
  out.closing = w.closing;
  for (const auto& st : w.steps) {
    const FineMatch& m = cert.matches.at(st.edge);
    ChildStep moved = st;
    moved.edge = m.target;
    moved.consequent = transport_fine(st.consequent, m.sub);
    out.steps.push_back(std::move(moved));
  }
  return out;
}

namespace {

MTWitness transport_boost_into(const IntenticState& u, const IntenticState& boosted, const MTWitness& w,
                               const BasicState& c) {
  MTWitness out;
  out.closing = w.closing;
  for (const auto& st : w.steps) {
    const Edge& e = u.children().at(st.edge);
    StatePtr child = boost(e.child, c);
    long idx = boosted.find_child(e.hypothesis, child->key());
    if (idx < 0) throw std::logic_error("boosted child not found");
    const IntenticState& target = *boosted.children()[static_cast<std::size_t>(idx)].child;
    ChildStep moved;
    moved.edge = static_cast<std::size_t>(idx);
    moved.antecedent = st.antecedent;
    moved.connection = boost_connection(Edge{st.antecedent, e.child, st.connection}, c, target.base());
    moved.consequent = transport_boost_into(*e.child, target, st.consequent, c);
    out.steps.push_back(std::move(moved));
  }
  return out;
}

}  // namespace

MTWitness transport_boost(const IntenticState& u, const MTWitness& w, const BasicState& c) {
  if (c.empty()) return w;
  StatePtr self = IntenticState::make(u.base(), u.children());
  StatePtr boosted = boost(self, c);
  return transport_boost_into(u, *boosted, w, c);
}

void check_entailment_certificate(const std::vector<Formula>& gamma, const Formula& phi, const IntenticState& v,
                                  const FineCert& cert, const MTWitness& w, const WitnessRegistry& reg) {
  IntenticState root(BasicState(gamma), {});
  try {
    verify_fine_cert(root, v, cert);
  } catch (const Rejected& r) {
    throw Rejected("fine_cert/" + r.path(), r.reason());
  }
  check_mt_witness(v, phi, w, reg);
}

std::size_t witness_size(const MTWitness& w) {
  std::size_t n = w.closing.size();
  for (const auto& st : w.steps) {
    n += witness_size(st.consequent);
    for (const auto& p : st.connection) n += p.size();
  }
  return n;
}

}  // namespace intentic
