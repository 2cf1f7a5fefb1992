#include "intentic/syntax.hpp"

#include <algorithm>
#include <functional>

namespace intentic {

std::string Term::text() const {
  if (kind == Kind::Witness) return "#" + std::to_string(witness);
  return name;
}

struct Formula::Node {
  Connective kind = Connective::Falsum;
  std::string name;  // relation or bound variable
  std::vector<Term> args;
  Formula lhs_or_body{std::shared_ptr<const Node>()};
  Formula rhs{std::shared_ptr<const Node>()};
  std::string key;
  std::size_t hash = 0;
  std::vector<std::string> free;
  std::size_t size = 1;
};

namespace {

using Stack = std::vector<std::string>;

bool stack_binds_any(const Stack& stack, const std::vector<std::string>& vars) {
  for (const auto& v : vars)
    if (std::find(stack.begin(), stack.end(), v) != stack.end()) return true;
  return false;
}

void write_term_key(const Term& t, const Stack& stack, std::string& out) {
  switch (t.kind) {
    case Term::Kind::Variable: {
      for (std::size_t i = stack.size(); i-- > 0;) {
        if (stack[i] == t.name) {
          out += '^';
          out += std::to_string(stack.size() - 1 - i);
          return;
        }
      }
      out += "v:";
      out += t.name;
      return;
    }
    case Term::Kind::Constant:
      out += "c:";
      out += t.name;
      return;
    case Term::Kind::Witness:
      out += '#';
      out += std::to_string(t.witness);
      return;
  }
}

}  // namespace

// Writes the key of `f` under binder stack `stack`. Subterms that do not
// mention any stacked variable are context free and reuse their cached key.
static void write_key(const Formula& f, Stack& stack, std::string& out) {
  if (stack.empty() || !stack_binds_any(stack, f.free_vars())) {
    out += f.key();
    return;
  }
  switch (f.kind()) {
    case Connective::Atom:
      out += f.relation();
      out += '(';
      for (std::size_t i = 0; i < f.args().size(); ++i) {
        if (i) out += ',';
        write_term_key(f.args()[i], stack, out);
      }
      out += ')';
      return;
    case Connective::Falsum:
      out += 'F';
      return;
    case Connective::And:
    case Connective::Or:
    case Connective::Implies:
      out += f.is(Connective::And) ? "&(" : f.is(Connective::Or) ? "|(" : ">(";
      write_key(f.lhs(), stack, out);
      out += ',';
      write_key(f.rhs(), stack, out);
      out += ')';
      return;
    case Connective::ForAll:
    case Connective::Exists:
      out += f.is(Connective::ForAll) ? "A." : "E.";
      stack.push_back(f.bound_var());
      write_key(f.body(), stack, out);
      stack.pop_back();
      return;
  }
}

namespace {

std::vector<std::string> merge_free(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

Formula Formula::atom(std::string relation, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = Connective::Atom;
  n->name = std::move(relation);
  n->args = std::move(args);
  for (const auto& t : n->args)
    if (t.is_variable()) n->free.push_back(t.name);
  std::sort(n->free.begin(), n->free.end());
  n->free.erase(std::unique(n->free.begin(), n->free.end()), n->free.end());
  n->key = n->name + "(";
  Stack empty;
  for (std::size_t i = 0; i < n->args.size(); ++i) {
    if (i) n->key += ',';
    write_term_key(n->args[i], empty, n->key);
  }
  n->key += ')';
  n->hash = std::hash<std::string>{}(n->key);
  n->size = 1;
  return Formula(std::move(n));
}

Formula Formula::equals(Term lhs, Term rhs) { return atom("=", {std::move(lhs), std::move(rhs)}); }

Formula Formula::falsum() {
  static const Formula f = [] {
    auto n = std::make_shared<Node>();
    n->kind = Connective::Falsum;
    n->key = "F";
    n->hash = std::hash<std::string>{}(n->key);
    return Formula(std::move(n));
  }();
  return f;
}

Formula::Formula() : Formula(falsum()) {}

Formula Formula::make_binary(Connective kind, Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->free = merge_free(lhs.free_vars(), rhs.free_vars());
  n->size = 1 + lhs.size() + rhs.size();
  n->key = kind == Connective::And ? "&(" : kind == Connective::Or ? "|(" : ">(";
  n->key += lhs.key();
  n->key += ',';
  n->key += rhs.key();
  n->key += ')';
  n->hash = std::hash<std::string>{}(n->key);
  n->lhs_or_body = std::move(lhs);
  n->rhs = std::move(rhs);
  return Formula(std::move(n));
}

Formula Formula::conj(Formula lhs, Formula rhs) { return make_binary(Connective::And, std::move(lhs), std::move(rhs)); }
Formula Formula::disj(Formula lhs, Formula rhs) { return make_binary(Connective::Or, std::move(lhs), std::move(rhs)); }
Formula Formula::implies(Formula lhs, Formula rhs) {
  return make_binary(Connective::Implies, std::move(lhs), std::move(rhs));
}
Formula Formula::negation(Formula body) { return implies(std::move(body), falsum()); }

Formula Formula::make_quantifier(Connective kind, std::string var, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->free = body.free_vars();
  n->free.erase(std::remove(n->free.begin(), n->free.end(), var), n->free.end());
  n->size = 1 + body.size();
  n->key = kind == Connective::ForAll ? "A." : "E.";
  Stack stack{var};
  write_key(body, stack, n->key);
  n->hash = std::hash<std::string>{}(n->key);
  n->name = std::move(var);
  n->lhs_or_body = std::move(body);
  return Formula(std::move(n));
}

Formula Formula::forall(std::string var, Formula body) {
  return make_quantifier(Connective::ForAll, std::move(var), std::move(body));
}
Formula Formula::exists(std::string var, Formula body) {
  return make_quantifier(Connective::Exists, std::move(var), std::move(body));
}

Connective Formula::kind() const { return node_->kind; }
bool Formula::is_negation() const { return is(Connective::Implies) && rhs().is(Connective::Falsum); }
const std::string& Formula::relation() const { return node_->name; }
const std::vector<Term>& Formula::args() const { return node_->args; }
const Formula& Formula::lhs() const { return node_->lhs_or_body; }
const Formula& Formula::rhs() const { return node_->rhs; }
const std::string& Formula::bound_var() const { return node_->name; }
const Formula& Formula::body() const { return node_->lhs_or_body; }
const std::string& Formula::key() const { return node_->key; }
std::size_t Formula::hash() const { return node_->hash; }
const std::vector<std::string>& Formula::free_vars() const { return node_->free; }
bool Formula::has_free(std::string_view var) const {
  return std::binary_search(node_->free.begin(), node_->free.end(), var);
}
std::size_t Formula::size() const { return node_->size; }

void Formula::collect_constants(std::set<std::string>& base, std::set<std::uint32_t>& witnesses) const {
  switch (kind()) {
    case Connective::Atom:
      for (const auto& t : args()) {
        if (t.kind == Term::Kind::Constant) base.insert(t.name);
        if (t.kind == Term::Kind::Witness) witnesses.insert(t.witness);
      }
      return;
    case Connective::Falsum:
      return;
    case Connective::ForAll:
    case Connective::Exists:
      body().collect_constants(base, witnesses);
      return;
    default:
      lhs().collect_constants(base, witnesses);
      rhs().collect_constants(base, witnesses);
  }
}

void Formula::collect_variable_names(std::set<std::string>& out) const {
  switch (kind()) {
    case Connective::Atom:
      for (const auto& t : args())
        if (t.is_variable()) out.insert(t.name);
      return;
    case Connective::Falsum:
      return;
    case Connective::ForAll:
    case Connective::Exists:
      out.insert(bound_var());
      body().collect_variable_names(out);
      return;
    default:
      lhs().collect_variable_names(out);
      rhs().collect_variable_names(out);
  }
}

bool operator==(const Formula& a, const Formula& b) {
  return a.node_ == b.node_ || (a.node_->hash == b.node_->hash && a.node_->key == b.node_->key);
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  return a.node_->key.compare(b.node_->key) <=> 0;
}

bool Formula::identical(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Connective::Atom:
      return relation() == other.relation() && args() == other.args();
    case Connective::Falsum:
      return true;
    case Connective::ForAll:
    case Connective::Exists:
      return bound_var() == other.bound_var() && body().identical(other.body());
    default:
      return lhs().identical(other.lhs()) && rhs().identical(other.rhs());
  }
}

// ---------------------------------------------------------------------------

std::string fresh_name(std::string base, const std::set<std::string>& avoid) {
  while (avoid.contains(base)) base += '\'';
  return base;
}

static Term apply_to_term(const Term& t, const Substitution& s) {
  if (!t.is_variable()) return t;
  auto it = s.find(t.name);
  return it == s.end() ? t : it->second;
}

Formula substitute(const Formula& f, const Substitution& s) {
  if (s.empty()) return f;
  bool relevant = false;
  for (const auto& [var, term] : s) {
    if (f.has_free(var)) {
      relevant = true;
      break;
    }
  }
  if (!relevant) return f;

  switch (f.kind()) {
    case Connective::Atom: {
      std::vector<Term> args;
      args.reserve(f.args().size());
      for (const auto& t : f.args()) args.push_back(apply_to_term(t, s));
      return Formula::atom(f.relation(), std::move(args));
    }
    case Connective::Falsum:
      return f;
    case Connective::And:
      return Formula::conj(substitute(f.lhs(), s), substitute(f.rhs(), s));
    case Connective::Or:
      return Formula::disj(substitute(f.lhs(), s), substitute(f.rhs(), s));
    case Connective::Implies:
      return Formula::implies(substitute(f.lhs(), s), substitute(f.rhs(), s));
    case Connective::ForAll:
    case Connective::Exists: {
      Substitution inner;
      bool captures = false;
      for (const auto& [var, term] : s) {
        if (var == f.bound_var() || !f.body().has_free(var)) continue;
        inner.emplace(var, term);
        if (term.is_variable() && term.name == f.bound_var()) captures = true;
      }
      std::string bound = f.bound_var();
      Formula body = f.body();
      if (captures) {
        std::set<std::string> avoid;
        f.body().collect_variable_names(avoid);
        for (const auto& [var, term] : inner) {
          avoid.insert(var);
          if (term.is_variable()) avoid.insert(term.name);
        }
        std::string renamed = fresh_name(bound, avoid);
        body = substitute(body, bound, Term::variable(renamed));
        bound = std::move(renamed);
      }
      body = substitute(body, inner);
      return f.is(Connective::ForAll) ? Formula::forall(std::move(bound), std::move(body))
                                      : Formula::exists(std::move(bound), std::move(body));
    }
  }
  return f;
}

Formula substitute(const Formula& f, const std::string& var, const Term& t) {
  return substitute(f, Substitution{{var, t}});
}

// ---------------------------------------------------------------------------

static void polarize(const Formula& f, Polarity pol, std::vector<std::string>& scope,
                     std::vector<PolarizedSubformula>& out) {
  out.push_back({f, pol, scope});
  switch (f.kind()) {
    case Connective::Atom:
    case Connective::Falsum:
      return;
    case Connective::And:
    case Connective::Or:
      polarize(f.lhs(), pol, scope, out);
      polarize(f.rhs(), pol, scope, out);
      return;
    case Connective::Implies:
      polarize(f.lhs(), pol == Polarity::Positive ? Polarity::Negative : Polarity::Positive, scope, out);
      polarize(f.rhs(), pol, scope, out);
      return;
    case Connective::ForAll:
    case Connective::Exists:
      scope.push_back(f.bound_var());
      polarize(f.body(), pol, scope, out);
      scope.pop_back();
      return;
  }
}

std::vector<PolarizedSubformula> polarized_subformulas(const Formula& f) {
  std::vector<PolarizedSubformula> out;
  std::vector<std::string> scope;
  polarize(f, Polarity::Positive, scope, out);
  return out;
}

std::vector<Formula> positive_subformulas(const Formula& f) {
  std::vector<Formula> out;
  for (auto& p : polarized_subformulas(f)) {
    if (p.polarity != Polarity::Positive) continue;
    if (std::find(out.begin(), out.end(), p.formula) == out.end()) out.push_back(std::move(p.formula));
  }
  return out;
}

// ---------------------------------------------------------------------------

void Signature::add_relation(const std::string& name, int arity) {
  if (arity < 0) throw std::invalid_argument("negative arity for relation " + name);
  if (!relations_.emplace(name, arity).second) throw std::invalid_argument("duplicate relation " + name);
}

void Signature::add_constant(const std::string& name) {
  if (!constants_.insert(name).second) throw std::invalid_argument("duplicate constant " + name);
}

std::optional<int> Signature::arity(const std::string& relation) const {
  auto it = relations_.find(relation);
  if (it == relations_.end()) return std::nullopt;
  return it->second;
}

Signature Signature::relational_pa() {
  Signature sig;
  sig.add_relation("S", 2);
  sig.add_relation("Add", 3);
  sig.add_relation("Mul", 3);
  sig.add_relation("=", 2);
  sig.add_constant("0");
  return sig;
}

}  // namespace intentic
