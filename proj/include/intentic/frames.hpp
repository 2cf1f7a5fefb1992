#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "intentic/states.hpp"
#include "intentic/truthmaking.hpp"

namespace intentic {

struct GenParams {
  std::uint64_t seed = 0;
  int max_depth = 3;
  int max_branching = 3;
  std::vector<std::string> relations{"P", "Q", "R"};  // unary
  std::vector<std::string> constants{"c1", "c2"};
  int max_generators = 3;
};

// Signature for generated states: the unary relations and constants.
Signature frame_signature(const GenParams& params);

// Deterministic in (seed, params). Uses modulo reduction of mt19937_64
// output rather than std distributions, whose output is
// implementation-defined.
class FrameRng {
 public:
  explicit FrameRng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(eng_() % n); }
  bool coin(unsigned percent) { return below(100) < percent; }

 private:
  std::mt19937_64 eng_;
};

StatePtr gen_state(const GenParams& params);
StatePtr gen_state(const GenParams& params, FrameRng& rng, const BasicState& base, int depth);
Formula gen_atom(const GenParams& params, FrameRng& rng);
Formula gen_hypothesis(const GenParams& params, FrameRng& rng);
// A random fine extension built by app at a random path, possibly through rep.
StatePtr gen_fine_extension(const StatePtr& u, const GenParams& params, FrameRng& rng, const WitnessRegistry& reg);
// A random witness accepted against u.
MTWitness gen_witness(const IntenticState& u, const GenParams& params, FrameRng& rng, int depth);

// ⟨b(u), H(v) ∪ H(w)⟩. Requires u ≤_F v and u ≤_F w.
StatePtr local_join(const IntenticState& u, const IntenticState& v, const IntenticState& w);

// s = App(v, {Boost(w, b(v))}) together with the data needed to move
// witnesses for w to witnesses for s.
class Commutation {
 public:
  // sigma_witness shows σ_{b(w)} ∈ MT(v); when absent, b(w) ⊆ b(v) is
  // required and the witness is assembled from generators.
  Commutation(const StatePtr& v, const StatePtr& w, const WitnessRegistry& reg,
              std::optional<MTWitness> sigma_witness = std::nullopt);

  const StatePtr& state() const { return s_; }
  const FineCert& cert() const { return cert_; }
  std::size_t edge() const { return edge_; }

  MTWitness transport(const MTWitness& w_phi) const;

 private:
  StatePtr v_, w_, s_;
  FineCert cert_;
  std::size_t edge_ = 0;
  Formula antecedent_;
  std::vector<Proof> connection_;
  MTWitness sigma_in_s_;  // empty closing: use LEM on false
};

struct TrialReport {
  bool ok = true;
  std::string failure;
  StatePtr u, v, w;
};

// Preorder, local directedness and commutation on one seeded triple.
TrialReport frame_trial(std::uint64_t seed, const GenParams& params, const WitnessRegistry& reg);
// A chain of fine extensions with transitivity, transport and constructor
// re-validation checks.
TrialReport chain_trial(std::uint64_t seed, const GenParams& params, const WitnessRegistry& reg, int length = 4);

struct FuzzSummary {
  std::size_t trials = 0, pass = 0, fail = 0;
  std::vector<std::string> failures;  // "seed: reason"
  std::string line() const;           // trials=N pass=K fail=M
};

// Alternates frame and chain trials over seeds seed, seed+1, ...
FuzzSummary fuzz_frames(std::uint64_t seed, std::size_t count, const GenParams& params, const WitnessRegistry& reg);

}  // namespace intentic
