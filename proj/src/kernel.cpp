#include "intentic/kernel.hpp"

#include <algorithm>
#include <array>

namespace intentic {

struct Proof::Node {
  Rule rule = Rule::Assume;
  Formula conclusion;
  std::vector<Proof> premises;
  ProofAnnotations ann;
  std::size_t size = 1;
  std::size_t height = 0;
};

namespace {

constexpr std::array<std::pair<Rule, std::string_view>, 17> kRuleNames{{
    {Rule::Assume, "assume"},
    {Rule::Lem, "lem"},
    {Rule::AndIntro, "and_i"},
    {Rule::AndElimLeft, "and_el"},
    {Rule::AndElimRight, "and_er"},
    {Rule::OrIntroLeft, "or_il"},
    {Rule::OrIntroRight, "or_ir"},
    {Rule::OrElim, "or_e"},
    {Rule::ImpIntro, "imp_i"},
    {Rule::ImpElim, "imp_e"},
    {Rule::FalsumElim, "bot_e"},
    {Rule::ForallIntro, "all_i"},
    {Rule::ForallElim, "all_e"},
    {Rule::ExistsIntro, "ex_i"},
    {Rule::ExistsElim, "ex_e"},
    {Rule::OrElimNH, "or_e_nh"},
    {Rule::ExistsElimNH, "ex_e_nh"},
}};

}  // namespace

std::string_view rule_name(Rule r) {
  for (const auto& [rule, name] : kRuleNames)
    if (rule == r) return name;
  return "?";
}

std::optional<Rule> rule_from_name(std::string_view name) {
  for (const auto& [rule, n] : kRuleNames)
    if (n == name) return rule;
  return std::nullopt;
}

Proof Proof::assume(Formula f, std::string label) {
  ProofAnnotations ann;
  ann.label = std::move(label);
  return node(Rule::Assume, std::move(f), {}, std::move(ann));
}

Proof Proof::lem(Formula instance) {
  Formula conclusion = Formula::disj(instance, Formula::negation(instance));
  return node(Rule::Lem, std::move(conclusion), {});
}

Proof Proof::node(Rule rule, Formula conclusion, std::vector<Proof> premises, ProofAnnotations ann) {
  auto n = std::make_shared<Node>();
  n->rule = rule;
  n->conclusion = std::move(conclusion);
  for (const auto& p : premises) {
    if (p.empty()) throw std::invalid_argument("empty premise");
    n->size += p.size();
    n->height = std::max(n->height, p.height() + 1);
  }
  n->premises = std::move(premises);
  n->ann = std::move(ann);
  Proof out;
  out.node_ = std::move(n);
  return out;
}

Rule Proof::rule() const { return node_->rule; }
const Formula& Proof::conclusion() const { return node_->conclusion; }
const std::vector<Proof>& Proof::premises() const { return node_->premises; }
const ProofAnnotations& Proof::annotations() const { return node_->ann; }
std::size_t Proof::size() const { return node_ ? node_->size : 0; }
std::size_t Proof::height() const { return node_ ? node_->height : 0; }

Proof Proof::with_premises(std::vector<Proof> premises) const {
  return node(rule(), conclusion(), std::move(premises), annotations());
}

// ---------------------------------------------------------------------------

namespace {

struct Leaf {
  std::string label;
  Formula formula;
  friend bool operator==(const Leaf&, const Leaf&) = default;
};

using Leaves = std::vector<Leaf>;

void add_leaves(Leaves& into, const Leaves& from) {
  for (const auto& l : from)
    if (std::find(into.begin(), into.end(), l) == into.end()) into.push_back(l);
}

// Infers the term t with body[var := t] == target, when var occurs in body.
std::optional<Term> infer_instance(const Formula& body, const std::string& var, const Formula& target);

class Checker {
 public:
  Checker(Logic logic, const WitnessRegistry& reg) : logic_(logic), reg_(reg) {}

  Leaves check(const Proof& p, const std::string& path) {
    if (p.empty()) throw Rejected(path, "empty proof node");
    const auto& ann = p.annotations();
    const Formula& concl = p.conclusion();
    const auto& prem = p.premises();
    const std::string tag = std::string(rule_name(p.rule()));

    auto reject = [&](const std::string& why) -> Rejected { return Rejected(path, tag + ": " + why); };
    auto arity = [&](std::size_t n) {
      if (prem.size() != n)
        throw reject("expected " + std::to_string(n) + " premises, got " + std::to_string(prem.size()));
    };
    auto sub = [&](std::size_t i) { return check(prem[i], path + "." + std::to_string(i)); };

    if (logic_ == Logic::NonHypothetical) {
      if (is_hypothetical(p.rule())) throw reject("rule is excluded from non-hypothetical logic");
      if (!ann.discharge.empty()) throw reject("discharge labels are not allowed in non-hypothetical logic");
    }
    check_witnesses_known(concl, path);

    switch (p.rule()) {
      case Rule::Assume:
        arity(0);
        return {{ann.label, concl}};

      case Rule::Lem:
        arity(0);
        if (!concl.is(Connective::Or) || !concl.rhs().is_negation() || concl.rhs().lhs() != concl.lhs())
          throw reject("conclusion is not of the form ψ | ~ψ");
        return {};

      case Rule::AndIntro: {
        arity(2);
        if (!concl.is(Connective::And)) throw reject("conclusion is not a conjunction");
        Leaves out = sub(0);
        add_leaves(out, sub(1));
        if (prem[0].conclusion() != concl.lhs() || prem[1].conclusion() != concl.rhs())
          throw reject("premises do not match the conjuncts");
        return out;
      }

      case Rule::AndElimLeft:
      case Rule::AndElimRight: {
        arity(1);
        Leaves out = sub(0);
        const Formula& c = prem[0].conclusion();
        if (!c.is(Connective::And)) throw reject("premise is not a conjunction");
        const Formula& part = p.rule() == Rule::AndElimLeft ? c.lhs() : c.rhs();
        if (part != concl) throw reject("conclusion is not the selected conjunct");
        return out;
      }

      case Rule::OrIntroLeft:
      case Rule::OrIntroRight: {
        arity(1);
        Leaves out = sub(0);
        if (!concl.is(Connective::Or)) throw reject("conclusion is not a disjunction");
        const Formula& part = p.rule() == Rule::OrIntroLeft ? concl.lhs() : concl.rhs();
        if (part != prem[0].conclusion()) throw reject("premise is not the introduced disjunct");
        return out;
      }

      case Rule::OrElim: {
        arity(3);
        if (ann.discharge.empty() || ann.discharge.size() > 2) throw reject("needs one or two discharge labels");
        const Formula& d = prem[0].conclusion();
        if (!d.is(Connective::Or)) throw reject("major premise is not a disjunction");
        if (prem[1].conclusion() != concl || prem[2].conclusion() != concl)
          throw reject("minor premises must both conclude the conclusion");
        Leaves out = sub(0);
        const std::string& left_label = ann.discharge.front();
        const std::string& right_label = ann.discharge.back();
        add_leaves(out, discharge(sub(1), left_label, d.lhs(), reject));
        add_leaves(out, discharge(sub(2), right_label, d.rhs(), reject));
        return out;
      }

      case Rule::ImpIntro: {
        arity(1);
        if (ann.discharge.size() != 1) throw reject("needs exactly one discharge label");
        if (!concl.is(Connective::Implies)) throw reject("conclusion is not an implication");
        if (prem[0].conclusion() != concl.rhs()) throw reject("premise does not conclude the consequent");
        return discharge(sub(0), ann.discharge.front(), concl.lhs(), reject);
      }

      case Rule::ImpElim: {
        arity(2);
        const Formula& major = prem[0].conclusion();
        if (!major.is(Connective::Implies)) throw reject("major premise is not an implication");
        if (major.lhs() != prem[1].conclusion()) throw reject("minor premise does not match the antecedent");
        if (major.rhs() != concl) throw reject("conclusion is not the consequent");
        Leaves out = sub(0);
        add_leaves(out, sub(1));
        return out;
      }

      case Rule::FalsumElim: {
        arity(1);
        if (!prem[0].conclusion().is(Connective::Falsum)) throw reject("premise is not false");
        return sub(0);
      }

      case Rule::ForallIntro: {
        arity(1);
        if (!concl.is(Connective::ForAll)) throw reject("conclusion is not universal");
        std::string eigen = ann.var.value_or(concl.bound_var());
        Formula expected = substitute(concl.body(), concl.bound_var(), Term::variable(eigen));
        if (prem[0].conclusion() != expected) throw reject("premise is not the matrix at the eigenvariable");
        if (concl.has_free(eigen)) throw reject("eigenvariable " + eigen + " is free in the conclusion");
        Leaves out = sub(0);
        for (const auto& l : out)
          if (l.formula.has_free(eigen))
            throw reject("eigenvariable " + eigen + " is free in open assumption " + to_string(l.formula));
        return out;
      }

      case Rule::ForallElim: {
        arity(1);
        const Formula& u = prem[0].conclusion();
        if (!u.is(Connective::ForAll)) throw reject("premise is not universal");
        Term t = instance_term(u, concl, ann, reject);
        if (substitute(u.body(), u.bound_var(), t) != concl) throw reject("conclusion is not the instance");
        return sub(0);
      }

      case Rule::ExistsIntro: {
        arity(1);
        if (!concl.is(Connective::Exists)) throw reject("conclusion is not existential");
        Term t = instance_term(concl, prem[0].conclusion(), ann, reject);
        if (substitute(concl.body(), concl.bound_var(), t) != prem[0].conclusion())
          throw reject("premise is not the instance");
        return sub(0);
      }

      case Rule::ExistsElim: {
        arity(2);
        if (ann.discharge.size() != 1) throw reject("needs exactly one discharge label");
        const Formula& e = prem[0].conclusion();
        if (!e.is(Connective::Exists)) throw reject("major premise is not existential");
        if (prem[1].conclusion() != concl) throw reject("minor premise does not conclude the conclusion");
        std::string eigen = ann.var.value_or(e.bound_var());
        Formula hyp = substitute(e.body(), e.bound_var(), Term::variable(eigen));
        if (concl.has_free(eigen)) throw reject("eigenvariable " + eigen + " is free in the conclusion");
        if (e.has_free(eigen)) throw reject("eigenvariable " + eigen + " is free in the major premise");
        Leaves minor = discharge(sub(1), ann.discharge.front(), hyp, reject);
        for (const auto& l : minor)
          if (l.formula.has_free(eigen))
            throw reject("eigenvariable " + eigen + " is free in open assumption " + to_string(l.formula));
        Leaves out = sub(0);
        add_leaves(out, minor);
        return out;
      }

      case Rule::OrElimNH: {
        arity(3);
        const Formula& d = prem[0].conclusion();
        if (!d.is(Connective::Or)) throw reject("first premise is not a disjunction");
        const Formula& l = prem[1].conclusion();
        const Formula& r = prem[2].conclusion();
        if (!l.is(Connective::Implies) || l.lhs() != d.lhs() || l.rhs() != concl)
          throw reject("second premise must be (left disjunct -> conclusion)");
        if (!r.is(Connective::Implies) || r.lhs() != d.rhs() || r.rhs() != concl)
          throw reject("third premise must be (right disjunct -> conclusion)");
        Leaves out = sub(0);
        add_leaves(out, sub(1));
        add_leaves(out, sub(2));
        return out;
      }

      case Rule::ExistsElimNH: {
        arity(2);
        const Formula& e = prem[0].conclusion();
        if (!e.is(Connective::Exists)) throw reject("first premise is not existential");
        const Formula& body = e.body();
        if (body.free_vars() != std::vector<std::string>{e.bound_var()})
          throw reject("matrix must have the bound variable as its sole free variable");
        auto id = reg_.lookup(body);
        if (!id) throw reject("no witness constant is registered for " + to_string(body));
        Term c = Term::witness_constant(*id);
        if (ann.witness && *ann.witness != c)
          throw reject("witness " + ann.witness->text() + " is not the canonical constant " + c.text());
        const Formula& minor = prem[1].conclusion();
        if (!minor.is(Connective::Implies) || minor.rhs() != concl)
          throw reject("second premise must be an implication into the conclusion");
        if (minor.lhs() != substitute(body, e.bound_var(), c))
          throw reject("antecedent must be the matrix at the canonical witness " + c.text());
        Leaves out = sub(0);
        add_leaves(out, sub(1));
        return out;
      }
    }
    throw reject("unknown rule");
  }

 private:
  template <typename Reject>
  Term instance_term(const Formula& quantified, const Formula& instance, const ProofAnnotations& ann,
                     Reject&& reject) {
    if (ann.witness) return *ann.witness;
    if (!quantified.body().has_free(quantified.bound_var())) return Term::variable(quantified.bound_var());
    auto t = infer_instance(quantified.body(), quantified.bound_var(), instance);
    if (!t) throw reject("cannot infer the instantiating term");
    return *t;
  }

  template <typename Reject>
  Leaves discharge(Leaves leaves, const std::string& label, const Formula& hyp, Reject&& reject) {
    Leaves out;
    for (auto& l : leaves) {
      if (!label.empty() && l.label == label) {
        if (l.formula != hyp)
          throw reject("assumption labelled '" + label + "' is " + to_string(l.formula) + ", expected " +
                       to_string(hyp));
        continue;
      }
      out.push_back(std::move(l));
    }
    return out;
  }

  void check_witnesses_known(const Formula& f, const std::string& path) {
    std::set<std::string> base;
    std::set<std::uint32_t> ws;
    f.collect_constants(base, ws);
    for (auto id : ws)
      if (!reg_.contains(id)) throw Rejected(path, "unknown witness constant #" + std::to_string(id));
  }

  Logic logic_;
  const WitnessRegistry& reg_;
};

bool match_term(const Term& pattern, const Term& target, const std::string& var,
                const std::vector<std::string>& pstack, const std::vector<std::string>& tstack,
                std::optional<Term>& binding) {
  auto level = [](const std::vector<std::string>& st, const Term& t) -> long {
    if (!t.is_variable()) return -1;
    for (std::size_t i = st.size(); i-- > 0;)
      if (st[i] == t.name) return static_cast<long>(st.size() - 1 - i);
    return -1;
  };
  long pl = level(pstack, pattern);
  long tl = level(tstack, target);
  if (pl >= 0 || tl >= 0) return pl == tl;
  if (pattern.is_variable() && pattern.name == var) {
    if (binding) return *binding == target;
    binding = target;
    return true;
  }
  return pattern == target;
}

bool match_instance(const Formula& pattern, const Formula& target, const std::string& var,
                    std::vector<std::string>& pstack, std::vector<std::string>& tstack,
                    std::optional<Term>& binding) {
  if (pattern.kind() != target.kind()) return false;
  switch (pattern.kind()) {
    case Connective::Atom:
      if (pattern.relation() != target.relation() || pattern.args().size() != target.args().size()) return false;
      for (std::size_t i = 0; i < pattern.args().size(); ++i)
        if (!match_term(pattern.args()[i], target.args()[i], var, pstack, tstack, binding)) return false;
      return true;
    case Connective::Falsum:
      return true;
    case Connective::ForAll:
    case Connective::Exists: {
      pstack.push_back(pattern.bound_var());
      tstack.push_back(target.bound_var());
      bool ok = match_instance(pattern.body(), target.body(), var, pstack, tstack, binding);
      pstack.pop_back();
      tstack.pop_back();
      return ok;
    }
    default:
      return match_instance(pattern.lhs(), target.lhs(), var, pstack, tstack, binding) &&
             match_instance(pattern.rhs(), target.rhs(), var, pstack, tstack, binding);
  }
}

std::optional<Term> infer_instance(const Formula& body, const std::string& var, const Formula& target) {
  std::vector<std::string> ps, ts;
  std::optional<Term> binding;
  if (!match_instance(body, target, var, ps, ts, binding)) return std::nullopt;
  return binding;
}

}  // namespace

Judgment check_proof(const Proof& p, Logic logic, const WitnessRegistry& reg) {
  Checker checker(logic, reg);
  Leaves leaves = checker.check(p, "root");
  Judgment j;
  for (auto& l : leaves) j.open_assumptions.push_back(std::move(l.formula));
  std::sort(j.open_assumptions.begin(), j.open_assumptions.end());
  j.open_assumptions.erase(std::unique(j.open_assumptions.begin(), j.open_assumptions.end()),
                           j.open_assumptions.end());
  j.conclusion = p.conclusion();
  return j;
}

std::optional<Judgment> try_check_proof(const Proof& p, Logic logic, const WitnessRegistry& reg) {
  try {
    return check_proof(p, logic, reg);
  } catch (const Rejected&) {
    return std::nullopt;
  }
}

namespace {

Leaves collect_open(const Proof& p) {
  if (p.rule() == Rule::Assume) return {{p.label(), p.conclusion()}};
  const auto& ann = p.annotations();
  Leaves out;
  for (std::size_t i = 0; i < p.premises().size(); ++i) {
    Leaves sub = collect_open(p.premises()[i]);
    std::string label;
    if (p.rule() == Rule::ImpIntro && !ann.discharge.empty()) label = ann.discharge.front();
    if (p.rule() == Rule::ExistsElim && i == 1 && !ann.discharge.empty()) label = ann.discharge.front();
    if (p.rule() == Rule::OrElim && i > 0 && !ann.discharge.empty())
      label = i == 1 ? ann.discharge.front() : ann.discharge.back();
    if (!label.empty())
      std::erase_if(sub, [&](const Leaf& l) { return l.label == label; });
    add_leaves(out, sub);
  }
  return out;
}

}  // namespace

std::vector<Formula> open_assumptions(const Proof& p) {
  std::vector<Formula> out;
  for (auto& l : collect_open(p)) out.push_back(std::move(l.formula));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool axiomatic(const Proof& p, const AxiomOracle& is_axiom) {
  for (const auto& f : open_assumptions(p))
    if (!is_axiom(f)) return false;
  return true;
}

bool contains_rule(const Proof& p, Rule r) {
  if (p.rule() == r) return true;
  return std::any_of(p.premises().begin(), p.premises().end(), [&](const Proof& q) { return contains_rule(q, r); });
}

bool contains_hypothetical_rule(const Proof& p) {
  if (is_hypothetical(p.rule())) return true;
  return std::any_of(p.premises().begin(), p.premises().end(),
                     [](const Proof& q) { return contains_hypothetical_rule(q); });
}

Proof substitute_proof(const Proof& p, const std::string& var, const Term& t) {
  const auto& ann = p.annotations();
  Formula concl = substitute(p.conclusion(), var, t);
  std::vector<Proof> premises;
  premises.reserve(p.premises().size());
  for (std::size_t i = 0; i < p.premises().size(); ++i) {
    bool rebinds = false;
    if (p.rule() == Rule::ForallIntro) rebinds = ann.var.value_or(p.conclusion().bound_var()) == var;
    if (p.rule() == Rule::ExistsElim && i == 1)
      rebinds = ann.var.value_or(p.premises()[0].conclusion().bound_var()) == var;
    premises.push_back(rebinds ? p.premises()[i] : substitute_proof(p.premises()[i], var, t));
  }
  ProofAnnotations out_ann = ann;
  if (out_ann.witness && out_ann.witness->is_variable() && out_ann.witness->name == var) out_ann.witness = t;
  return Proof::node(p.rule(), std::move(concl), std::move(premises), std::move(out_ann));
}

// ---------------------------------------------------------------------------

namespace nd {

Proof assume(const Formula& f, std::string label) { return Proof::assume(f, std::move(label)); }

Proof lem(const Formula& instance) { return Proof::lem(instance); }

Proof and_intro(Proof lhs, Proof rhs) {
  Formula c = Formula::conj(lhs.conclusion(), rhs.conclusion());
  return Proof::node(Rule::AndIntro, std::move(c), {std::move(lhs), std::move(rhs)});
}

Proof and_elim_left(Proof p) {
  Formula c = p.conclusion().lhs();
  return Proof::node(Rule::AndElimLeft, std::move(c), {std::move(p)});
}

Proof and_elim_right(Proof p) {
  Formula c = p.conclusion().rhs();
  return Proof::node(Rule::AndElimRight, std::move(c), {std::move(p)});
}

Proof or_intro_left(Proof p, const Formula& right) {
  Formula c = Formula::disj(p.conclusion(), right);
  return Proof::node(Rule::OrIntroLeft, std::move(c), {std::move(p)});
}

Proof or_intro_right(const Formula& left, Proof p) {
  Formula c = Formula::disj(left, p.conclusion());
  return Proof::node(Rule::OrIntroRight, std::move(c), {std::move(p)});
}

Proof or_elim(Proof major, std::string left_label, Proof left, std::string right_label, Proof right) {
  ProofAnnotations ann;
  ann.discharge = {std::move(left_label), std::move(right_label)};
  Formula c = left.conclusion();
  return Proof::node(Rule::OrElim, std::move(c), {std::move(major), std::move(left), std::move(right)},
                     std::move(ann));
}

Proof imp_intro(const Formula& antecedent, std::string label, Proof body) {
  ProofAnnotations ann;
  ann.discharge = {std::move(label)};
  Formula c = Formula::implies(antecedent, body.conclusion());
  return Proof::node(Rule::ImpIntro, std::move(c), {std::move(body)}, std::move(ann));
}

Proof imp_elim(Proof major, Proof minor) {
  Formula c = major.conclusion().rhs();
  return Proof::node(Rule::ImpElim, std::move(c), {std::move(major), std::move(minor)});
}

Proof falsum_elim(Proof p, const Formula& conclusion) {
  return Proof::node(Rule::FalsumElim, conclusion, {std::move(p)});
}

Proof forall_intro(Proof p, const std::string& eigen, const std::string& bound) {
  Formula body = bound == eigen ? p.conclusion() : substitute(p.conclusion(), eigen, Term::variable(bound));
  ProofAnnotations ann;
  ann.var = eigen;
  return Proof::node(Rule::ForallIntro, Formula::forall(bound, std::move(body)), {std::move(p)}, std::move(ann));
}

Proof forall_elim(Proof p, const Term& t) {
  const Formula& u = p.conclusion();
  Formula c = substitute(u.body(), u.bound_var(), t);
  ProofAnnotations ann;
  ann.witness = t;
  return Proof::node(Rule::ForallElim, std::move(c), {std::move(p)}, std::move(ann));
}

Proof exists_intro(Proof p, const Formula& existential, const Term& t) {
  ProofAnnotations ann;
  ann.witness = t;
  return Proof::node(Rule::ExistsIntro, existential, {std::move(p)}, std::move(ann));
}

Proof exists_elim(Proof major, const std::string& eigen, std::string label, Proof minor) {
  ProofAnnotations ann;
  ann.var = eigen;
  ann.discharge = {std::move(label)};
  Formula c = minor.conclusion();
  return Proof::node(Rule::ExistsElim, std::move(c), {std::move(major), std::move(minor)}, std::move(ann));
}

Proof or_elim_nh(Proof disjunction, Proof left, Proof right) {
  Formula c = left.conclusion().rhs();
  return Proof::node(Rule::OrElimNH, std::move(c), {std::move(disjunction), std::move(left), std::move(right)});
}

Proof exists_elim_nh(Proof existential, Proof minor, const Term& witness) {
  ProofAnnotations ann;
  ann.witness = witness;
  Formula c = minor.conclusion().rhs();
  return Proof::node(Rule::ExistsElimNH, std::move(c), {std::move(existential), std::move(minor)}, std::move(ann));
}

}  // namespace nd

}  // namespace intentic
