#pragma once

#include <vector>

#include "intentic/kernel.hpp"
#include "intentic/states.hpp"

namespace intentic {

struct ChildStep;

// Certificate that the closing proof's conclusion is made true by a state.
// Generators are made true directly. Each child step makes true the implication
// antecedent -> (consequent's conclusion) through an edge. The closing proof
// is the closure under non-hypothetical consequence.
struct MTWitness {
  std::vector<ChildStep> steps;
  Proof closing;

  const Formula& formula() const { return closing.conclusion(); }
};

struct ChildStep {
  std::size_t edge = 0;
  Formula antecedent;
  // Empty: every child generator must be a parent generator or the
  // antecedent. Otherwise one proof per child generator.
  std::vector<Proof> connection;
  MTWitness consequent;

  Formula implication() const { return Formula::implies(antecedent, consequent.formula()); }
};

// Witness for a generator.
MTWitness base_witness(const Formula& generator);
// Child-step witness for antecedent -> consequent.formula() through edge i.
MTWitness child_witness(const IntenticState& u, std::size_t edge, const Formula& antecedent, MTWitness consequent);

// Throws Rejected naming the failing check and witness path.
void check_mt_witness(const IntenticState& u, const Formula& phi, const MTWitness& w, const WitnessRegistry& reg);
bool accepts_mt_witness(const IntenticState& u, const Formula& phi, const MTWitness& w, const WitnessRegistry& reg);

// Retargets child steps of a witness for u to v along a certificate u ≤_F v.
MTWitness transport_fine(const MTWitness& w, const FineCert& cert);
// Witness for (Boost(u, c), φ) from a witness for (u, φ).
MTWitness transport_boost(const IntenticState& u, const MTWitness& w, const BasicState& c);

// Γ ⊩ φ at certificate level: cert shows ⟨BasicState(Γ), ∅⟩ ≤_F v and w
// shows φ ∈ MT(v).
void check_entailment_certificate(const std::vector<Formula>& gamma, const Formula& phi, const IntenticState& v,
                                  const FineCert& cert, const MTWitness& w, const WitnessRegistry& reg);

std::size_t witness_size(const MTWitness& w);

}  // namespace intentic
