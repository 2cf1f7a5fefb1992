#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "intentic/kernel.hpp"
#include "intentic/states.hpp"
#include "intentic/truthmaking.hpp"

namespace intentic {

class TranslateError : public std::runtime_error {
 public:
  TranslateError(std::string path, std::string reason)
      : std::runtime_error(path + ": " + reason), path_(std::move(path)), reason_(std::move(reason)) {}
  const std::string& path() const { return path_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string path_;
  std::string reason_;
};

struct TranslationResult {
  StatePtr state;
  FineCert fine_cert;  // input state ≤_F state
  MTWitness witness;
};

using WitnessMap = std::map<Formula, MTWitness>;

// From a classical proof of Γ ⊢ φ and witnesses for Γ against u, builds a
// fine extension v of u with a witness for φ. Witness constants needed by
// ∃E are registered in `reg`.
TranslationResult translate(const Proof& p, const StatePtr& u, const WitnessMap& gamma, WitnessRegistry& reg);

// Classical proof of w's formula from u's generators.
Proof extract(const IntenticState& u, const MTWitness& w, const WitnessRegistry& reg);

struct Entailment {
  std::vector<Formula> gamma;
  StatePtr root;
  TranslationResult result;
};

// Root ⟨BasicState(Γ), ∅⟩ with generator witnesses, then translate.
Entailment entail(const std::vector<Formula>& gamma, const Proof& p, WitnessRegistry& reg);

}  // namespace intentic
