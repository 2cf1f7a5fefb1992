#include "intentic/transform.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace intentic {

namespace {

class Translator {
 public:
  explicit Translator(WitnessRegistry& reg) : reg_(reg) {}

  TranslationResult run(const Proof& p, const StatePtr& u, const WitnessMap& gamma, const std::string& path) {
    switch (p.rule()) {
      case Rule::Assume:
        return assumption(p, u, gamma, path);
      case Rule::ImpIntro:
        return imp_intro(p, u, gamma, path);
      case Rule::OrElim:
        return or_elim(p, u, gamma, path);
      case Rule::ExistsElim:
        return exists_elim(p, u, gamma, path);
      default:
        return generic(p, u, gamma, path);
    }
  }

 private:
  TranslationResult assumption(const Proof& p, const StatePtr& u, const WitnessMap& gamma, const std::string& path) {
    auto it = gamma.find(p.conclusion());
    if (it == gamma.end()) throw TranslateError(path, "no witness for assumption " + to_string(p.conclusion()));
    return {u, identity_cert(*u), it->second};
  }

  // Witnesses for q's open assumptions against Boost(u, c).
  WitnessMap boosted(const Proof& q, const IntenticState& u, const WitnessMap& gamma, const BasicState& c,
                     const std::string& path) {
    WitnessMap out;
    for (const auto& f : open_assumptions(q)) {
      if (c.contains(f)) {
        out.emplace(f, base_witness(f));
        continue;
      }
      auto it = gamma.find(f);
      if (it == gamma.end()) throw TranslateError(path, "no witness for assumption " + to_string(f));
      out.emplace(f, transport_boost(u, it->second, c));
    }
    return out;
  }

  // Translates q under the extra hypothesis h, against Boost(u, {h}).
  TranslationResult hypothetical(const Proof& q, const StatePtr& u, const WitnessMap& gamma, const Formula& h,
                                 const std::string& path) {
    BasicState c({h});
    StatePtr uh = boost(u, c);
    return run(q, uh, boosted(q, *u, gamma, c, path), path);
  }

  std::size_t index_of(const IntenticState& v, const Formula& h, const StatePtr& child) {
    long i = v.find_child(h, child->key());
    if (i < 0) throw std::logic_error("appended child not found");
    return static_cast<std::size_t>(i);
  }

  TranslationResult imp_intro(const Proof& p, const StatePtr& u, const WitnessMap& gamma, const std::string& path) {
    const Formula& a = p.conclusion().lhs();
    TranslationResult r1 = hypothetical(p.premises()[0], u, gamma, a, path + ".0");
    StatePtr v = app(u, {{a, r1.state, {}}}, reg_);
    MTWitness w = child_witness(*v, index_of(*v, a, r1.state), a, std::move(r1.witness));
    return {v, check_fine_ext(*u, *v), std::move(w)};
  }

  TranslationResult or_elim(const Proof& p, const StatePtr& u, const WitnessMap& gamma, const std::string& path) {
    const Formula& d = p.premises()[0].conclusion();
    const Formula& a = d.lhs();
    const Formula& b = d.rhs();
    TranslationResult r1 = run(p.premises()[0], u, gamma, path + ".0");
    TranslationResult r2 = hypothetical(p.premises()[1], u, gamma, a, path + ".1");
    TranslationResult r3 = hypothetical(p.premises()[2], u, gamma, b, path + ".2");
    StatePtr v = app(r1.state, {{a, r2.state, {}}, {b, r3.state, {}}}, reg_);
    MTWitness w = transport_fine(r1.witness, check_fine_ext(*r1.state, *v));
    ChildStep left{index_of(*v, a, r2.state), a, {}, std::move(r2.witness)};
    ChildStep right{index_of(*v, b, r3.state), b, {}, std::move(r3.witness)};
    Proof left_imp = nd::assume(left.implication());
    Proof right_imp = nd::assume(right.implication());
    w.steps.push_back(std::move(left));
    w.steps.push_back(std::move(right));
    w.closing = nd::or_elim_nh(std::move(w.closing), std::move(left_imp), std::move(right_imp));
    return {v, check_fine_ext(*u, *v), std::move(w)};
  }

  TranslationResult exists_elim(const Proof& p, const StatePtr& u, const WitnessMap& gamma, const std::string& path) {
    const Formula& e = p.premises()[0].conclusion();
    const Formula& body = e.body();
    if (body.free_vars() != std::vector<std::string>{e.bound_var()})
      throw TranslateError(path, "existential matrix " + to_string(body) +
                                     " must have the bound variable as its only free variable");
    std::string eigen = p.annotations().var.value_or(e.bound_var());
    Term c = Term::witness_constant(reg_.register_witness(body));
    Formula h = substitute(body, e.bound_var(), c);
    Proof minor = substitute_proof(p.premises()[1], eigen, c);

    TranslationResult r1 = run(p.premises()[0], u, gamma, path + ".0");
    TranslationResult r2 = hypothetical(minor, u, gamma, h, path + ".1");
    StatePtr v = app(r1.state, {{h, r2.state, {}}}, reg_);
    MTWitness w = transport_fine(r1.witness, check_fine_ext(*r1.state, *v));
    ChildStep step{index_of(*v, h, r2.state), h, {}, std::move(r2.witness)};
    Proof imp = nd::assume(step.implication());
    w.steps.push_back(std::move(step));
    w.closing = nd::exists_elim_nh(std::move(w.closing), std::move(imp), c);
    return {v, check_fine_ext(*u, *v), std::move(w)};
  }

  TranslationResult generic(const Proof& p, const StatePtr& u, const WitnessMap& gamma, const std::string& path) {
    std::vector<TranslationResult> parts;
    std::vector<Edge> edges = u->children();
    for (std::size_t i = 0; i < p.premises().size(); ++i) {
      parts.push_back(run(p.premises()[i], u, gamma, path + "." + std::to_string(i)));
      const auto& kids = parts.back().state->children();
      edges.insert(edges.end(), kids.begin(), kids.end());
    }
    StatePtr v = parts.empty() ? u : IntenticState::make(u->base(), std::move(edges));
    MTWitness w;
    std::vector<Proof> closings;
    for (auto& r : parts) {
      MTWitness moved = transport_fine(r.witness, check_fine_ext(*r.state, *v));
      closings.push_back(moved.closing);
      for (auto& st : moved.steps) w.steps.push_back(std::move(st));
    }
    w.closing = p.with_premises(std::move(closings));
    if (p.rule() == Rule::ForallIntro) {
      std::string eigen = p.annotations().var.value_or(p.conclusion().bound_var());
      for (const auto& a : open_assumptions(w.closing))
        if (a.has_free(eigen))
          throw TranslateError(path, "eigenvariable " + eigen + " escapes into made-true implication " +
                                         to_string(a) + "; universal generalisation over a hypothetical "
                                         "subproof is not supported");
    }
    return {v, check_fine_ext(*u, *v), std::move(w)};
  }

  WitnessRegistry& reg_;
};

// ---------------------------------------------------------------------------

void collect_free(const Formula& f, std::set<std::string>& out) {
  for (const auto& v : f.free_vars()) out.insert(v);
}

void collect_avoid(const IntenticState& u, const MTWitness& w, std::set<std::string>& out) {
  for (const auto& g : u.base().generators()) collect_free(g, out);
  for (const auto& st : w.steps) {
    collect_free(st.antecedent, out);
    collect_avoid(*u.children().at(st.edge).child, st.consequent, out);
  }
}

void collect_proof_vars(const Proof& p, std::set<std::string>& out) {
  p.conclusion().collect_variable_names(out);
  if (p.annotations().var) out.insert(*p.annotations().var);
  for (const auto& q : p.premises()) collect_proof_vars(q, out);
}

// Renames ∀I eigenvariables that occur in `avoid`, so that leaves spliced in
// later cannot violate the eigenvariable condition.
Proof freshen(const Proof& p, const std::set<std::string>& avoid) {
  std::vector<Proof> premises;
  for (const auto& q : p.premises()) premises.push_back(freshen(q, avoid));
  if (p.rule() == Rule::ForallIntro) {
    std::string eigen = p.annotations().var.value_or(p.conclusion().bound_var());
    if (avoid.contains(eigen)) {
      std::set<std::string> used = avoid;
      collect_proof_vars(p, used);
      std::string fresh = fresh_name(eigen, used);
      premises[0] = substitute_proof(premises[0], eigen, Term::variable(fresh));
      ProofAnnotations ann = p.annotations();
      ann.var = fresh;
      return Proof::node(p.rule(), p.conclusion(), std::move(premises), std::move(ann));
    }
  }
  return p.with_premises(std::move(premises));
}

// Rebuilds a proof, mapping every unlabelled assumption leaf through `leaf`.
Proof replace_open(const Proof& p, const std::function<Proof(const Formula&)>& leaf) {
  if (p.rule() == Rule::Assume) return p.label().empty() ? leaf(p.conclusion()) : p;
  if (p.premises().empty()) return p;
  std::vector<Proof> premises;
  for (const auto& q : p.premises()) premises.push_back(replace_open(q, leaf));
  return p.with_premises(std::move(premises));
}

// Drops every assumption label, except that leaves concluding `target` get
// `label`.
Proof relabel(const Proof& p, const Formula* target, const std::string& label) {
  if (p.rule() == Rule::Assume) {
    std::string l = target && p.conclusion() == *target ? label : std::string();
    return l == p.label() ? p : nd::assume(p.conclusion(), std::move(l));
  }
  if (p.premises().empty()) return p;
  std::vector<Proof> premises;
  for (const auto& q : p.premises()) premises.push_back(relabel(q, target, label));
  return p.with_premises(std::move(premises));
}

class Extractor {
 public:
  explicit Extractor(std::set<std::string> avoid) : avoid_(std::move(avoid)) {}

  // Open leaves of the result are unlabelled and concern u's generators.
  Proof run(const IntenticState& u, const MTWitness& w) {
    std::vector<std::pair<Formula, Proof>> lifted;
    for (const auto& st : w.steps) {
      const IntenticState& s = *u.children().at(st.edge).child;
      Proof inner = run(s, st.consequent);
      std::string label = "h" + std::to_string(++counter_);
      const Formula& theta = st.antecedent;
      inner = replace_open(inner, [&](const Formula& g) -> Proof {
        if (!st.connection.empty()) {
          const auto& gens = s.base().generators();
          auto it = std::lower_bound(gens.begin(), gens.end(), g);
          if (it == gens.end() || !(*it == g)) throw std::logic_error("leaf is not a child generator");
          return relabel(st.connection[static_cast<std::size_t>(it - gens.begin())], &theta, label);
        }
        return nd::assume(g, g == theta ? label : std::string());
      });
      lifted.emplace_back(st.implication(), nd::imp_intro(theta, label, std::move(inner)));
    }
    Proof closing = relabel(freshen(w.closing, avoid_), nullptr, {});
    return replace_open(closing, [&](const Formula& f) -> Proof {
      if (u.base().contains(f)) return nd::assume(f);
      for (const auto& [imp, proof] : lifted)
        if (imp == f) return proof;
      throw std::logic_error("closing assumption " + to_string(f) + " has no source");
    });
  }

 private:
  std::set<std::string> avoid_;
  std::size_t counter_ = 0;
};

}  // namespace

TranslationResult translate(const Proof& p, const StatePtr& u, const WitnessMap& gamma, WitnessRegistry& reg) {
  Judgment j;
  try {
    j = check_proof(p, Logic::Classical, reg);
  } catch (const Rejected& r) {
    throw TranslateError(r.path(), "input proof rejected: " + r.reason());
  }
  try {
    validate(*u, reg);
  } catch (const Rejected& r) {
    throw TranslateError(r.path(), "input state invalid: " + r.reason());
  }
  for (const auto& a : j.open_assumptions) {
    auto it = gamma.find(a);
    if (it == gamma.end()) throw TranslateError("root", "no witness for open assumption " + to_string(a));
    try {
      check_mt_witness(*u, a, it->second, reg);
    } catch (const Rejected& r) {
      throw TranslateError(r.path(), "witness for " + to_string(a) + " rejected: " + r.reason());
    }
  }
  Translator t(reg);
  return t.run(p, u, gamma, "root");
}

Proof extract(const IntenticState& u, const MTWitness& w, const WitnessRegistry& reg) {
  check_mt_witness(u, w.formula(), w, reg);
  std::set<std::string> avoid;
  collect_avoid(u, w, avoid);
  Extractor x(std::move(avoid));
  return x.run(u, w);
}

Entailment entail(const std::vector<Formula>& gamma, const Proof& p, WitnessRegistry& reg) {
  for (const auto& g : gamma)
    if (!g.is_sentence()) throw TranslateError("root", "assumption " + to_string(g) + " is not a sentence");
  Entailment out;
  out.gamma = canonicalize(gamma);
  out.root = IntenticState::leaf(BasicState(gamma));
  WitnessMap w;
  for (const auto& g : out.gamma) w.emplace(g, base_witness(g));
  out.result = translate(p, out.root, w, reg);
  return out;
}

}  // namespace intentic
