#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace intentic {

// A term of the purely relational language: a variable, a declared base
// constant, or a witness constant `#k` naming registry entry k.
struct Term {
  enum class Kind : std::uint8_t { Variable, Constant, Witness };

  Kind kind = Kind::Variable;
  std::string name;
  std::uint32_t witness = 0;

  static Term variable(std::string name) { return {Kind::Variable, std::move(name), 0}; }
  static Term constant(std::string name) { return {Kind::Constant, std::move(name), 0}; }
  static Term witness_constant(std::uint32_t id) { return {Kind::Witness, {}, id}; }

  bool is_variable() const { return kind == Kind::Variable; }
  bool is_witness() const { return kind == Kind::Witness; }
  std::string text() const;

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

enum class Connective : std::uint8_t { Atom, Falsum, And, Or, Implies, ForAll, Exists };

// Immutable first-order formula. Copies share structure. Equality and
// ordering are alpha-equivalence: two formulas compare equal iff they differ
// only in the names of bound variables.
class Formula {
 public:
  static Formula atom(std::string relation, std::vector<Term> args);
  static Formula equals(Term lhs, Term rhs);
  static Formula falsum();
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula implies(Formula lhs, Formula rhs);
  // ~φ is notation for φ -> false.
  static Formula negation(Formula body);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);

  Formula();  // false

  Connective kind() const;
  bool is(Connective c) const { return kind() == c; }
  bool is_negation() const;
  bool is_quantifier() const { return is(Connective::ForAll) || is(Connective::Exists); }
  bool is_binary() const { return is(Connective::And) || is(Connective::Or) || is(Connective::Implies); }

  // Atom accessors.
  const std::string& relation() const;
  const std::vector<Term>& args() const;

  // Binary connective accessors.
  const Formula& lhs() const;
  const Formula& rhs() const;

  // Quantifier accessors.
  const std::string& bound_var() const;
  const Formula& body() const;

  // Canonical alpha-invariant key: bound variables are replaced by their
  // binder depth, free variables keep their names.
  const std::string& key() const;
  std::size_t hash() const;

  // Free variables, sorted.
  const std::vector<std::string>& free_vars() const;
  bool has_free(std::string_view var) const;
  bool is_sentence() const { return free_vars().empty(); }

  // Number of nodes.
  std::size_t size() const;
  // Largest witness constant layer is computed by the registry; this just
  // collects ids and base constant names.
  void collect_constants(std::set<std::string>& base, std::set<std::uint32_t>& witnesses) const;
  // All variable names occurring anywhere (free or bound).
  void collect_variable_names(std::set<std::string>& out) const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

  // Syntactic identity, bound names included.
  bool identical(const Formula& other) const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make_binary(Connective kind, Formula lhs, Formula rhs);
  static Formula make_quantifier(Connective kind, std::string var, Formula body);
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Simultaneous capture-avoiding substitution of terms for free variables.
using Substitution = std::map<std::string, Term>;

Formula substitute(const Formula& f, const std::string& var, const Term& t);
Formula substitute(const Formula& f, const Substitution& s);

// Appends primes to `base` until it avoids every name in `avoid`.
std::string fresh_name(std::string base, const std::set<std::string>& avoid);

enum class Polarity : std::uint8_t { Positive, Negative };

struct PolarizedSubformula {
  Formula formula;
  Polarity polarity;
  // Variables bound by quantifiers enclosing this occurrence, outermost first.
  std::vector<std::string> scope;
};

// Every subformula occurrence with its polarity. Implications flip the
// polarity of their antecedent; all other connectives preserve it.
std::vector<PolarizedSubformula> polarized_subformulas(const Formula& f);

// The positive projection (PosSub), deduplicated up to alpha-equivalence.
std::vector<Formula> positive_subformulas(const Formula& f);

// ---------------------------------------------------------------------------
// Signature

class Signature {
 public:
  Signature() = default;

  // Throws std::invalid_argument on duplicate relations or constants.
  void add_relation(const std::string& name, int arity);
  void add_constant(const std::string& name);

  std::optional<int> arity(const std::string& relation) const;
  bool has_constant(const std::string& name) const { return constants_.contains(name); }

  const std::map<std::string, int>& relations() const { return relations_; }
  const std::set<std::string>& constants() const { return constants_; }

  // An open signature accepts unknown relations and records their arity on
  // first use; later uses must agree.
  bool is_open() const { return open_; }
  void set_open(bool open) { open_ = open; }

  static Signature relational_pa();

 private:
  std::map<std::string, int> relations_;
  std::set<std::string> constants_;
  bool open_ = false;
};

// ---------------------------------------------------------------------------
// Witness constants

struct WitnessEntry {
  Formula formula;       // sole free variable is `variable`
  std::string variable;
  unsigned layer = 1;
};

class WitnessRegistry {
 public:
  // Returns the canonical constant for φ(x). Alpha-variants, including
  // renamings of the free variable, share one constant.
  std::uint32_t register_witness(const Formula& f);
  // Appends a new constant for φ(x) even when a canonical one exists.
  std::uint32_t register_variant(const Formula& f);
  std::optional<std::uint32_t> lookup(const Formula& f) const;

  const WitnessEntry& entry(std::uint32_t id) const;
  std::size_t size() const { return entries_.size(); }
  bool contains(std::uint32_t id) const { return id < entries_.size(); }

  // 1 + the largest layer of any witness constant in f (1 when none occur).
  unsigned layer_for(const Formula& f) const;
  // φ(c_φ) for entry id.
  Formula instance(std::uint32_t id) const;

  // One line per entry: id, layer and formula text, tab separated.
  std::string to_tsv() const;
  static WitnessRegistry from_tsv(std::string_view text, Signature& sig);

 private:
  static std::string lookup_key(const Formula& f, const std::string& var);
  std::uint32_t append(const Formula& f);

  std::vector<WitnessEntry> entries_;
  std::map<std::string, std::uint32_t> canonical_;
};

// ---------------------------------------------------------------------------
// Concrete syntax

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& message);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Strict parse against a fixed signature.
Formula parse_formula(std::string_view text, const Signature& sig, const WitnessRegistry& reg);
// Same, but an open signature records newly seen relations.
Formula parse_formula(std::string_view text, Signature& sig, const WitnessRegistry& reg);

std::string to_string(const Formula& f);
std::ostream& operator<<(std::ostream& os, const Formula& f);

}  // namespace intentic
