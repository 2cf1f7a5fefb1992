#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "intentic/syntax.hpp"

namespace intentic {

enum class Rule : std::uint8_t {
  Assume,
  Lem,
  AndIntro,
  AndElimLeft,
  AndElimRight,
  OrIntroLeft,
  OrIntroRight,
  OrElim,
  ImpIntro,
  ImpElim,
  FalsumElim,
  ForallIntro,
  ForallElim,
  ExistsIntro,
  ExistsElim,
  OrElimNH,
  ExistsElimNH,
};

std::string_view rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);

// The rules that reason from a discharged hypothesis.
inline bool is_hypothetical(Rule r) {
  return r == Rule::ImpIntro || r == Rule::OrElim || r == Rule::ExistsElim;
}

enum class Logic : std::uint8_t { Classical, NonHypothetical };

struct ProofAnnotations {
  std::string label;                   // assumption leaves
  std::vector<std::string> discharge;  // imp_i, ex_e: one label; or_e: one or two
  std::optional<std::string> var;      // eigenvariable of all_i / ex_e
  std::optional<Term> witness;         // instantiating term of all_e / ex_i / ex_e_nh
};

// Immutable natural-deduction tree. Every node records its conclusion; the
// checker verifies that each node instantiates its rule schema.
class Proof {
 public:
  Proof() = default;

  static Proof assume(Formula f, std::string label = {});
  // Leaf ψ ∨ ¬ψ.
  static Proof lem(Formula instance);
  static Proof node(Rule rule, Formula conclusion, std::vector<Proof> premises, ProofAnnotations ann = {});

  bool empty() const { return node_ == nullptr; }
  Rule rule() const;
  const Formula& conclusion() const;
  const std::vector<Proof>& premises() const;
  const ProofAnnotations& annotations() const;
  const std::string& label() const { return annotations().label; }

  std::size_t size() const;
  std::size_t height() const;

  // Replaces this node's premises, keeping rule, conclusion and annotations.
  Proof with_premises(std::vector<Proof> premises) const;

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

struct Judgment {
  std::vector<Formula> open_assumptions;  // sorted, alpha-deduplicated
  Formula conclusion;
};

class Rejected : public std::runtime_error {
 public:
  Rejected(std::string path, std::string reason)
      : std::runtime_error(path + ": " + reason), path_(std::move(path)), reason_(std::move(reason)) {}
  const std::string& path() const { return path_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string path_;
  std::string reason_;
};

// Checks that `p` is a derivation in the given logic. Throws Rejected with the
// failing node path ("root.1.0") and reason.
Judgment check_proof(const Proof& p, Logic logic, const WitnessRegistry& reg);

// Non-throwing variant.
std::optional<Judgment> try_check_proof(const Proof& p, Logic logic, const WitnessRegistry& reg);

// Open assumption formulas of a proof, honouring discharge labels. Does not
// validate rule applications.
std::vector<Formula> open_assumptions(const Proof& p);

using AxiomOracle = std::function<bool(const Formula&)>;

// True iff every open assumption satisfies the oracle.
bool axiomatic(const Proof& p, const AxiomOracle& is_axiom);

bool contains_rule(const Proof& p, Rule r);
bool contains_hypothetical_rule(const Proof& p);

// Replaces free occurrences of `var` by `t` in every formula of the proof.
// Subtrees that rebind `var` as an eigenvariable are left alone.
Proof substitute_proof(const Proof& p, const std::string& var, const Term& t);

// Builders that compute conclusions from premises.
namespace nd {

Proof assume(const Formula& f, std::string label = {});
Proof lem(const Formula& instance);
Proof and_intro(Proof lhs, Proof rhs);
Proof and_elim_left(Proof p);
Proof and_elim_right(Proof p);
Proof or_intro_left(Proof p, const Formula& right);
Proof or_intro_right(const Formula& left, Proof p);
Proof or_elim(Proof major, std::string left_label, Proof left, std::string right_label, Proof right);
Proof imp_intro(const Formula& antecedent, std::string label, Proof body);
Proof imp_elim(Proof major, Proof minor);
Proof falsum_elim(Proof p, const Formula& conclusion);
// ∀I generalising `eigen` in p's conclusion into `∀bound. ...`.
Proof forall_intro(Proof p, const std::string& eigen, const std::string& bound);
Proof forall_elim(Proof p, const Term& t);
Proof exists_intro(Proof p, const Formula& existential, const Term& t);
Proof exists_elim(Proof major, const std::string& eigen, std::string label, Proof minor);
Proof or_elim_nh(Proof disjunction, Proof left, Proof right);
Proof exists_elim_nh(Proof existential, Proof minor, const Term& witness);

}  // namespace nd

}  // namespace intentic
