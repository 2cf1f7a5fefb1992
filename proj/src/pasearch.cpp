#include "intentic/pasearch.hpp"

#include <algorithm>
#include <climits>
#include <sstream>
#include <unordered_map>

namespace intentic {

namespace {

constexpr std::pair<const char*, const char*> kAxioms[] = {
    {"E1", "forall x. x = x"},
    {"E2", "forall x. forall y. x = y -> y = x"},
    {"E3", "forall x. forall y. forall z. x = y & y = z -> x = z"},
    {"E4", "forall x. forall x'. forall y. forall y'. forall z. forall z'. "
           "x = x' & y = y' & z = z' & Add(x,y,z) -> Add(x',y',z')"},
    {"E5", "forall x. forall x'. forall y. forall y'. forall z. forall z'. "
           "x = x' & y = y' & z = z' & Mul(x,y,z) -> Mul(x',y',z')"},
    {"E6", "forall x. forall x'. forall y. forall y'. x = x' & y = y' & S(x,y) -> S(x',y')"},
    {"SF1", "forall x. exists y. S(x,y)"},
    {"SF2", "forall x. forall y. forall z. S(x,y) & S(x,z) -> y = z"},
    {"AF1", "forall x. forall y. exists z. Add(x,y,z)"},
    {"AF2", "forall x. forall y. forall z. forall z'. Add(x,y,z) & Add(x,y,z') -> z = z'"},
    {"MF1", "forall x. forall y. exists z. Mul(x,y,z)"},
    {"MF2", "forall x. forall y. forall z. forall z'. Mul(x,y,z) & Mul(x,y,z') -> z = z'"},
    {"S1", "forall x. ~S(x,0)"},
    {"S2", "forall x. forall y. forall z. S(x,z) & S(y,z) -> x = y"},
    {"A1", "forall x. Add(x,0,x)"},
    {"A2", "forall x. forall y. forall y'. forall z. forall z'. S(y,y') & Add(x,y,z) & S(z,z') -> Add(x,y',z')"},
    {"M1", "forall x. Mul(x,0,0)"},
    {"M2", "forall x. forall y. forall y'. forall z. forall u. S(y,y') & Mul(x,y,z) & Add(z,x,u) -> Mul(x,y',u)"},
};

// Leading universal variables and the matrices left after stripping k of them.
struct Prefix {
  std::vector<std::string> vars;
  std::vector<Formula> stripped;  // stripped[k] has k binders removed
};

Prefix prefix_of(const Formula& f) {
  Prefix p;
  Formula cur = f;
  p.stripped.push_back(cur);
  while (cur.is(Connective::ForAll)) {
    p.vars.push_back(cur.bound_var());
    cur = cur.body();
    p.stripped.push_back(cur);
  }
  return p;
}

long level_of(const std::vector<std::string>& stack, const Term& t) {
  if (!t.is_variable()) return -1;
  for (std::size_t i = stack.size(); i-- > 0;)
    if (stack[i] == t.name) return static_cast<long>(stack.size() - 1 - i);
  return -1;
}

bool match_term(const Term& p, const Term& t, const std::vector<std::string>& vars, std::vector<std::string>& ps,
                std::vector<std::string>& ts, Substitution& b) {
  long pl = level_of(ps, p);
  long tl = level_of(ts, t);
  if (pl >= 0 || tl >= 0) return pl == tl;
  if (p.is_variable() && std::find(vars.begin(), vars.end(), p.name) != vars.end()) {
    auto it = b.find(p.name);
    if (it != b.end()) return it->second == t;
    b.emplace(p.name, t);
    return true;
  }
  return p == t;
}

bool match_rec(const Formula& p, const Formula& t, const std::vector<std::string>& vars, std::vector<std::string>& ps,
               std::vector<std::string>& ts, Substitution& b) {
  if (p.kind() != t.kind()) return false;
  switch (p.kind()) {
    case Connective::Falsum:
      return true;
    case Connective::Atom:
      if (p.relation() != t.relation() || p.args().size() != t.args().size()) return false;
      for (std::size_t i = 0; i < p.args().size(); ++i)
        if (!match_term(p.args()[i], t.args()[i], vars, ps, ts, b)) return false;
      return true;
    case Connective::ForAll:
    case Connective::Exists: {
      ps.push_back(p.bound_var());
      ts.push_back(t.bound_var());
      bool ok = match_rec(p.body(), t.body(), vars, ps, ts, b);
      ps.pop_back();
      ts.pop_back();
      return ok;
    }
    default:
      return match_rec(p.lhs(), t.lhs(), vars, ps, ts, b) && match_rec(p.rhs(), t.rhs(), vars, ps, ts, b);
  }
}

}  // namespace

bool match_template(const Formula& pattern, const Formula& target, const std::vector<std::string>& vars,
                    Substitution& binding) {
  Substitution b = binding;
  std::vector<std::string> ps, ts;
  if (!match_rec(pattern, target, vars, ps, ts, b)) return false;
  if (substitute(pattern, b) != target) return false;
  binding = std::move(b);
  return true;
}

// ---------------------------------------------------------------------------

AxiomBase AxiomBase::relational_pa() {
  AxiomBase base;
  base.sig_ = Signature::relational_pa();
  WitnessRegistry none;
  for (const auto& [name, text] : kAxioms)
    base.axioms_.push_back({name, parse_formula(text, static_cast<const Signature&>(base.sig_), none)});
  base.rebuild();
  return base;
}

void AxiomBase::add_extra(const Formula& f) {
  if (!f.is_sentence()) throw std::invalid_argument("extra axiom is not a sentence: " + to_string(f));
  axioms_.push_back({"X" + std::to_string(++extra_count_), f});
  rebuild();
}

void AxiomBase::add_constant(const std::string& name) {
  if (!sig_.has_constant(name)) sig_.add_constant(name);
}

bool AxiomBase::remove(const std::string& name) {
  auto it = std::find_if(axioms_.begin(), axioms_.end(), [&](const NamedAxiom& a) { return a.name == name; });
  if (it == axioms_.end()) return false;
  axioms_.erase(it);
  rebuild();
  return true;
}

void AxiomBase::load_extras(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  WitnessRegistry none;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    line = line.substr(first);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    if (line.rfind("const ", 0) == 0) {
      std::istringstream names(line.substr(6));
      std::string n;
      while (names >> n) add_constant(n);
      continue;
    }
    add_extra(parse_formula(line, static_cast<const Signature&>(sig_), none));
  }
}

std::vector<Term> AxiomBase::constants() const {
  std::vector<Term> out;
  for (const auto& c : sig_.constants()) out.push_back(Term::constant(c));
  return out;
}

void AxiomBase::rebuild() {
  templates_.clear();
  std::set<std::string> seen;
  for (const auto& a : axioms_) {
    for (const auto& ps : polarized_subformulas(a.formula)) {
      if (ps.polarity != Polarity::Positive) continue;
      std::vector<std::string> vars;
      for (const auto& v : ps.scope)
        if (ps.formula.has_free(v) && std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
      // Alpha-invariant identity of the template: rename vars positionally.
      Substitution canon;
      for (std::size_t i = 0; i < vars.size(); ++i) canon.emplace(vars[i], Term::variable("$" + std::to_string(i)));
      std::string key = substitute(ps.formula, canon).key();
      if (seen.insert(key).second) templates_.push_back({ps.formula, std::move(vars)});
    }
  }
}

const NamedAxiom* AxiomBase::find_closed(const Formula& f) const {
  for (const auto& a : axioms_)
    if (a.formula == f) return &a;
  return nullptr;
}

bool AxiomBase::is_lem_instance(const Formula& f) {
  return f.is(Connective::Or) && f.rhs().is_negation() && f.rhs().lhs() == f.lhs();
}

bool AxiomBase::is_ind_instance(const Formula& f) {
  Formula cur = f;
  while (true) {
    // φ(0) ∧ ∀y ∀y′ (S(y,y′) ∧ φ(y) → φ(y′)) → ∀x φ(x)
    if (cur.is(Connective::Implies) && cur.lhs().is(Connective::And) && cur.rhs().is(Connective::ForAll)) {
      const Formula& all = cur.rhs();
      const std::string& x = all.bound_var();
      const Formula& phi = all.body();
      const Formula& base_case = cur.lhs().lhs();
      const Formula& step = cur.lhs().rhs();
      bool ok = base_case == substitute(phi, x, Term::constant("0"));
      if (ok && step.is(Connective::ForAll) && step.body().is(Connective::ForAll)) {
        const std::string& y = step.bound_var();
        const std::string& y2 = step.body().bound_var();
        const Formula& imp = step.body().body();
        ok = y != y2 && !(all.has_free(y) || all.has_free(y2)) && imp.is(Connective::Implies) &&
             imp.lhs().is(Connective::And) &&
             imp.lhs().lhs() == Formula::atom("S", {Term::variable(y), Term::variable(y2)}) &&
             imp.lhs().rhs() == substitute(phi, x, Term::variable(y)) &&
             imp.rhs() == substitute(phi, x, Term::variable(y2));
        if (ok) return true;
      }
    }
    if (!cur.is(Connective::ForAll)) return false;
    cur = cur.body();
  }
}

bool AxiomBase::is_axiom(const Formula& f) const {
  if (find_closed(f) || is_lem_instance(f) || is_ind_instance(f)) return true;
  for (const auto& a : axioms_) {
    Prefix pre = prefix_of(a.formula);
    for (std::size_t k = 1; k <= pre.vars.size(); ++k) {
      std::vector<std::string> vars(pre.vars.begin(), pre.vars.begin() + static_cast<long>(k));
      Substitution b;
      if (!match_template(pre.stripped[k], f, vars, b)) continue;
      std::set<std::string> images;
      bool renaming = true;
      for (const auto& [v, t] : b) renaming = renaming && t.is_variable() && images.insert(t.name).second;
      if (renaming) return true;
    }
  }
  return false;
}

std::optional<UniMatch> AxiomBase::uni(const Formula& f) const {
  for (const auto& a : axioms_) {
    Prefix pre = prefix_of(a.formula);
    for (std::size_t k = 1; k <= pre.vars.size(); ++k) {
      std::vector<std::string> vars(pre.vars.begin(), pre.vars.begin() + static_cast<long>(k));
      Substitution b;
      if (!match_template(pre.stripped[k], f, vars, b)) continue;
      Proof p = nd::assume(a.formula);
      for (const auto& v : vars) {
        auto it = b.find(v);
        Term t = it != b.end() ? it->second : Term::variable(v);
        b.emplace(v, t);
        p = nd::forall_elim(std::move(p), t);
      }
      if (p.conclusion() != f) continue;
      return UniMatch{a.name, std::move(b), std::move(p)};
    }
  }
  return std::nullopt;
}

bool AxiomBase::pos_sub_axiom(const Formula& f) const {
  for (const auto& t : templates_) {
    Substitution b;
    if (match_template(t.formula, f, t.vars, b)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------

namespace {

struct Outcome {
  std::optional<Proof> proof;
  int loop = INT_MAX;  // shallowest in-progress goal whose cut influenced a failure
  bool depth_cut = false;

  void absorb(const Outcome& o) {
    loop = std::min(loop, o.loop);
    depth_cut = depth_cut || o.depth_cut;
  }
};

struct MemoEntry {
  std::optional<Proof> proof;
  int failed_depth = -1;  // INT_MAX: fails at every depth
  bool failed_by_depth = false;
};

class Search {
 public:
  Search(const AxiomBase& base, const SearchConfig& cfg, WitnessRegistry& reg, const Formula& goal)
      : base_(base), cfg_(cfg), reg_(reg) {
    std::set<Term> pool;
    for (const auto& c : base.constants()) pool.insert(c);
    std::set<std::string> names;
    std::set<std::uint32_t> ws;
    goal.collect_constants(names, ws);
    for (const auto& n : names) pool.insert(Term::constant(n));
    for (auto w : ws) pool.insert(Term::witness_constant(w));
    base_pool_.assign(pool.begin(), pool.end());
    pool_ = base_pool_;

    for (const auto& t : base.positive_templates()) candidates_.push_back(t);
    for (const auto& ps : polarized_subformulas(goal)) {
      if (ps.polarity != Polarity::Positive) continue;
      std::vector<std::string> vars;
      for (const auto& v : ps.scope)
        if (ps.formula.has_free(v) && std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
      candidates_.push_back({ps.formula, std::move(vars)});
    }
  }

  SearchResult run(const Formula& goal) {
    SearchResult r;
    Outcome o = prove(goal, cfg_.depth);
    r.nodes = nodes_;
    r.trace = std::move(trace_);
    r.pool = pool_;
    if (o.proof) {
      r.verdict = SearchResult::Verdict::Proved;
      r.proof = std::move(o.proof);
    } else {
      r.depth_limited = o.depth_cut;
    }
    return r;
  }

 private:
  void trace(const std::string& rule, const Formula& goal, const char* verdict) {
    if (!cfg_.trace) return;
    trace_.push_back(std::to_string(stack_.size()) + "\t" + rule + "\t" + to_string(goal) + "\t" + verdict);
  }

  std::vector<Term> terms_for(const Formula& goal) const {
    std::set<Term> out(pool_.begin(), pool_.end());
    for (const auto& v : goal.free_vars()) out.insert(Term::variable(v));
    std::set<std::string> names;
    std::set<std::uint32_t> ws;
    goal.collect_constants(names, ws);
    for (const auto& n : names) out.insert(Term::constant(n));
    for (auto w : ws) out.insert(Term::witness_constant(w));
    return {out.begin(), out.end()};
  }

  // All extensions of `binding` to the template variables occurring in f.
  static void complete(const Template& t, const Substitution& binding, const std::vector<Term>& terms,
                       std::vector<Substitution>& out) {
    std::vector<std::string> open;
    for (const auto& v : t.vars)
      if (!binding.contains(v) && t.formula.has_free(v)) open.push_back(v);
    Substitution cur = binding;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == open.size()) {
        out.push_back(cur);
        return;
      }
      for (const auto& term : terms) {
        cur[open[i]] = term;
        rec(i + 1);
      }
      cur.erase(open[i]);
    };
    rec(0);
  }

  Outcome prove(const Formula& goal, int d) {
    ++nodes_;
    const std::string& key = goal.key();
    if (cfg_.memo) {
      auto it = memo_.find(key);
      if (it != memo_.end()) {
        const MemoEntry& m = it->second;
        if (m.proof && static_cast<int>(m.proof->height()) <= d) {
          trace("memo", goal, "proved");
          return {m.proof, INT_MAX, false};
        }
        if (m.failed_depth >= d) {
          trace("memo", goal, "failed");
          return {std::nullopt, INT_MAX, m.failed_by_depth};
        }
      }
    }
    if (auto it = active_.find(key); it != active_.end()) {
      trace("loop", goal, "cut");
      return {std::nullopt, it->second, false};
    }
    int index = static_cast<int>(stack_.size());
    active_.emplace(key, index);
    stack_.push_back(key);
    std::size_t generation = generation_;
    Outcome o = attempt(goal, d);
    stack_.pop_back();
    active_.erase(key);

    if (o.proof) {
      MemoEntry& m = memo_[key];
      if (!m.proof || m.proof->height() > o.proof->height()) m.proof = o.proof;
      o.loop = INT_MAX;
      o.depth_cut = false;
      return o;
    }
    if (o.loop >= index) {
      o.loop = INT_MAX;
      if (cfg_.memo && generation == generation_) {
        MemoEntry& m = memo_[key];
        int depth = o.depth_cut ? d : INT_MAX;
        if (depth > m.failed_depth) {
          m.failed_depth = depth;
          m.failed_by_depth = o.depth_cut;
        }
      }
    }
    return o;
  }

  Outcome attempt(const Formula& goal, int d) {
    if (auto p = axiom(goal)) {
      trace("axiom", goal, "proved");
      return {std::move(p)};
    }
    if (d <= 0) {
      trace("depth", goal, "cut");
      return {std::nullopt, INT_MAX, true};
    }
    Outcome acc;
    Outcome intro = prove_intro(goal, d);
    if (intro.proof) return intro;
    acc.absorb(intro);
    Outcome elim = prove_elim(goal, d);
    if (elim.proof) return elim;
    acc.absorb(elim);
    trace("none", goal, "failed");
    return acc;
  }

  std::optional<Proof> axiom(const Formula& goal) {
    if (base_.find_closed(goal) || AxiomBase::is_ind_instance(goal)) return nd::assume(goal);
    if (AxiomBase::is_lem_instance(goal)) return nd::lem(goal.lhs());
    if (base_.is_axiom(goal))
      if (auto u = base_.uni(goal)) return u->proof;
    return std::nullopt;
  }

  Outcome prove_intro(const Formula& goal, int d) {
    Outcome acc;
    switch (goal.kind()) {
      case Connective::And: {
        Outcome l = prove(goal.lhs(), d - 1);
        if (!l.proof) {
          trace("and_i", goal, "failed");
          return l;
        }
        Outcome r = prove(goal.rhs(), d - 1);
        if (!r.proof) {
          trace("and_i", goal, "failed");
          return r;
        }
        trace("and_i", goal, "proved");
        return {nd::and_intro(std::move(*l.proof), std::move(*r.proof))};
      }
      case Connective::Or: {
        Outcome l = prove(goal.lhs(), d - 1);
        if (l.proof) {
          trace("or_il", goal, "proved");
          return {nd::or_intro_left(std::move(*l.proof), goal.rhs())};
        }
        acc.absorb(l);
        Outcome r = prove(goal.rhs(), d - 1);
        if (r.proof) {
          trace("or_ir", goal, "proved");
          return {nd::or_intro_right(goal.lhs(), std::move(*r.proof))};
        }
        acc.absorb(r);
        trace("or_i", goal, "failed");
        return acc;
      }
      case Connective::ForAll: {
        std::set<std::string> avoid;
        goal.collect_variable_names(avoid);
        std::string eigen = fresh_name(goal.bound_var(), avoid);
        Formula body = substitute(goal.body(), goal.bound_var(), Term::variable(eigen));
        Outcome o = prove(body, d - 1);
        if (o.proof) {
          trace("all_i", goal, "proved");
          return {nd::forall_intro(std::move(*o.proof), eigen, goal.bound_var())};
        }
        trace("all_i", goal, "failed");
        return o;
      }
      case Connective::Exists: {
        for (const auto& t : terms_for(goal)) {
          Formula inst = substitute(goal.body(), goal.bound_var(), t);
          Outcome o = prove(inst, d - 1);
          if (o.proof) {
            trace("ex_i", goal, "proved");
            return {nd::exists_intro(std::move(*o.proof), goal, t)};
          }
          acc.absorb(o);
        }
        trace("ex_i", goal, "failed");
        return acc;
      }
      default:
        return acc;
    }
  }

  Outcome prove_elim(const Formula& goal, int d) {
    Outcome acc;
    if (!base_.pos_sub_axiom(goal)) {
      trace("gate", goal, "failed");
      return acc;
    }
    if (auto u = base_.uni(goal)) {
      if (static_cast<int>(u->proof.height()) <= d) {
        trace("uni", goal, "proved");
        return {u->proof};
      }
      acc.depth_cut = true;
    }

    std::vector<Term> terms = terms_for(goal);
    std::vector<std::pair<Proof, Formula>> unproved_antecedents;

    // (a) →E with an implication from the goal pool.
    for (const auto& t : candidates_) {
      if (!t.formula.is(Connective::Implies)) continue;
      Substitution b;
      if (!match_template(t.formula.rhs(), goal, t.vars, b)) continue;
      std::vector<Substitution> fills;
      complete(t, b, terms, fills);
      for (const auto& s : fills) {
        Formula imp = substitute(t.formula, s);
        if (imp.rhs() != goal) continue;
        Outcome major = prove(imp, d - 1);
        acc.absorb(major);
        if (!major.proof) continue;
        Outcome minor = prove(imp.lhs(), d - 1);
        if (minor.proof) {
          trace("imp_e", goal, "proved");
          return {nd::imp_elim(std::move(*major.proof), std::move(*minor.proof))};
        }
        acc.absorb(minor);
        unproved_antecedents.emplace_back(std::move(*major.proof), imp.lhs());
      }
    }
    trace("imp_e", goal, "failed");

    // (b) ∧E, only when the conjunction closes at once.
    for (const auto& t : candidates_) {
      if (!t.formula.is(Connective::And)) continue;
      for (int side = 0; side < 2; ++side) {
        const Formula& part = side == 0 ? t.formula.lhs() : t.formula.rhs();
        Substitution b;
        if (!match_template(part, goal, t.vars, b)) continue;
        std::vector<Substitution> fills;
        complete(t, b, terms, fills);
        for (const auto& s : fills) {
          Formula conj = substitute(t.formula, s);
          if (auto p = axiom(conj)) {
            trace("and_e", goal, "proved");
            return {side == 0 ? nd::and_elim_left(std::move(*p)) : nd::and_elim_right(std::move(*p))};
          }
        }
      }
    }
    trace("and_e", goal, "failed");

    // (c) ∨E′ with a pool disjunction.
    for (const auto& t : candidates_) {
      if (!t.formula.is(Connective::Or) || AxiomBase::is_lem_instance(t.formula)) continue;
      std::vector<Substitution> fills;
      complete(t, {}, terms, fills);
      for (const auto& s : fills) {
        Formula dj = substitute(t.formula, s);
        if (dj == goal) continue;
        Outcome major = prove(dj, d - 1);
        acc.absorb(major);
        if (!major.proof) continue;
        Outcome l = prove(Formula::implies(dj.lhs(), goal), d - 1);
        acc.absorb(l);
        if (!l.proof) continue;
        Outcome r = prove(Formula::implies(dj.rhs(), goal), d - 1);
        acc.absorb(r);
        if (!r.proof) continue;
        trace("or_e_nh", goal, "proved");
        return {nd::or_elim_nh(std::move(*major.proof), std::move(*l.proof), std::move(*r.proof))};
      }
    }
    trace("or_e_nh", goal, "failed");

    // (d) LEM on the antecedent of a provable implication into the goal.
    for (auto& [major, antecedent] : unproved_antecedents) {
      Formula neg = Formula::implies(Formula::negation(antecedent), goal);
      Outcome r = prove(neg, d - 1);
      acc.absorb(r);
      if (!r.proof) continue;
      trace("lem", goal, "proved");
      return {nd::or_elim_nh(nd::lem(antecedent), major, std::move(*r.proof))};
    }
    trace("lem", goal, "failed");

    // (e) ∃E′ with the canonical witness constant.
    for (const auto& t : candidates_) {
      if (!t.formula.is(Connective::Exists)) continue;
      std::vector<Substitution> fills;
      complete(t, {}, base_pool_, fills);
      for (const auto& s : fills) {
        Formula ex = substitute(t.formula, s);
        if (ex.body().free_vars() != std::vector<std::string>{ex.bound_var()}) continue;
        Outcome major = prove(ex, d - 1);
        acc.absorb(major);
        if (!major.proof) continue;
        Term c = Term::witness_constant(reg_.register_witness(ex.body()));
        Formula inst = substitute(ex.body(), ex.bound_var(), c);
        Outcome minor = prove(Formula::implies(inst, goal), d - 1);
        acc.absorb(minor);
        if (!minor.proof) continue;
        if (std::find(pool_.begin(), pool_.end(), c) == pool_.end()) {
          pool_.push_back(c);
          ++generation_;
          for (auto& [k, m] : memo_) m.failed_depth = -1;
        }
        trace("ex_e_nh", goal, "proved");
        return {nd::exists_elim_nh(std::move(*major.proof), std::move(*minor.proof), c)};
      }
    }
    trace("ex_e_nh", goal, "failed");

    // (f) ex falso.
    if (cfg_.allow_efq && !goal.is(Connective::Falsum)) {
      Outcome f = prove(Formula::falsum(), d - 1);
      if (f.proof) {
        trace("bot_e", goal, "proved");
        return {nd::falsum_elim(std::move(*f.proof), goal)};
      }
      acc.absorb(f);
      trace("bot_e", goal, "failed");
    }
    return acc;
  }

  const AxiomBase& base_;
  const SearchConfig& cfg_;
  WitnessRegistry& reg_;
  std::vector<Term> base_pool_;
  std::vector<Term> pool_;
  std::vector<Template> candidates_;
  std::unordered_map<std::string, MemoEntry> memo_;
  std::unordered_map<std::string, int> active_;
  std::vector<std::string> stack_;
  std::size_t generation_ = 0;
  std::size_t nodes_ = 0;
  std::vector<std::string> trace_;
};

}  // namespace

SearchResult prove(const Formula& goal, const AxiomBase& base, const SearchConfig& cfg, WitnessRegistry& reg) {
  if (cfg.depth < 0) throw std::invalid_argument("depth bound must be non-negative");
  Search s(base, cfg, reg, goal);
  SearchResult r = s.run(goal);
  if (r.proof) {
    Judgment j = check_proof(*r.proof, Logic::NonHypothetical, reg);
    if (j.conclusion != goal) throw std::logic_error("search returned a proof of the wrong formula");
    if (!axiomatic(*r.proof, [&](const Formula& f) { return base.is_axiom(f); }))
      throw std::logic_error("search returned a non-axiomatic proof");
  }
  return r;
}

}  // namespace intentic
