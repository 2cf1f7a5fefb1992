#pragma once

#include <memory>
#include <string>
#include <vector>

#include "intentic/kernel.hpp"
#include "intentic/syntax.hpp"

namespace intentic {

// Finite generator set d standing for its non-hypothetical closure [d].
class BasicState {
 public:
  BasicState() = default;
  explicit BasicState(std::vector<Formula> generators);

  const std::vector<Formula>& generators() const { return gens_; }
  bool empty() const { return gens_.empty(); }
  bool contains(const Formula& f) const;
  bool subset_of(const BasicState& other) const;

  // Right-nested conjunction of the generators; false -> false when empty.
  Formula sigma() const;
  // d + φ
  BasicState plus(const Formula& f) const;
  BasicState unite(const BasicState& other) const;

  friend bool operator==(const BasicState& a, const BasicState& b) { return a.gens_ == b.gens_; }

 private:
  std::vector<Formula> gens_;
};

// Sorted and alpha-deduplicated.
std::vector<Formula> canonicalize(std::vector<Formula> gens);

// Derivation of generator j of b from the single assumption σ_b by ∧E.
Proof project_generator(const BasicState& b, std::size_t j);
// ∧I over assumptions, concluding gens' sigma. Requires gens non-empty.
Proof assemble_sigma(const BasicState& b);

class IntenticState;

struct Edge {
  Formula hypothesis;
  std::shared_ptr<const IntenticState> child;
  // Empty: the child's generators are exactly the parent's plus the
  // hypothesis. Otherwise one non-hypothetical proof per child generator, in
  // generator order, from the parent's generators and the hypothesis.
  std::vector<Proof> connection;
};

class IntenticState {
 public:
  IntenticState() : key_("B[]H[]") {}
  // Children are sorted by structural key and deduplicated on
  // (hypothesis, child).
  IntenticState(BasicState base, std::vector<Edge> children);

  static std::shared_ptr<const IntenticState> leaf(BasicState base);
  static std::shared_ptr<const IntenticState> make(BasicState base, std::vector<Edge> children);

  const BasicState& base() const { return base_; }
  const std::vector<Edge>& children() const { return children_; }
  const IntenticState& child(std::size_t i) const { return *children_.at(i).child; }

  // Structural identity: base, hypotheses and child structure. Connection
  // proofs are not part of the key.
  const std::string& key() const { return key_; }
  std::size_t depth() const;
  std::size_t node_count() const;
  // Index of the edge with this hypothesis and child key, or -1.
  long find_child(const Formula& hypothesis, const std::string& child_key) const;

 private:
  BasicState base_;
  std::vector<Edge> children_;
  std::string key_;
};

using StatePtr = std::shared_ptr<const IntenticState>;

inline bool same_structure(const IntenticState& a, const IntenticState& b) { return a.key() == b.key(); }

// Child indices from the root; each index addresses the children list of the
// state reached so far.
using Path = std::vector<std::size_t>;

// Hypotheses ⟨φ_1..φ_n⟩ along a path.
std::vector<Formula> connectors(const IntenticState& u, const Path& path);
const IntenticState& follow(const IntenticState& u, const Path& path);

// Validates one edge against a parent base. Throws Rejected.
void check_edge(const BasicState& parent, const Edge& e, const WitnessRegistry& reg, const std::string& path);
// Full recursive re-validation of every edge invariant.
void validate(const IntenticState& u, const WitnessRegistry& reg);

struct FineMatch;
// For each child of u, the index of a matching child of v and the
// certificate for that pair.
struct FineCert {
  std::vector<FineMatch> matches;
};
struct FineMatch {
  std::size_t target = 0;
  FineCert sub;
};

FineCert identity_cert(const IntenticState& u);
// Throws Rejected with the first unmatchable child path.
FineCert check_fine_ext(const IntenticState& u, const IntenticState& v);
bool is_fine_ext(const IntenticState& u, const IntenticState& v);
// Verifies a supplied certificate for u ≤_F v. Throws Rejected.
void verify_fine_cert(const IntenticState& u, const IntenticState& v, const FineCert& cert);
// Certificate for u ≤_F w from certificates for u ≤_F v and v ≤_F w.
FineCert compose(const FineCert& uv, const FineCert& vw);

struct NewChild {
  Formula hypothesis;
  StatePtr child;
  std::vector<Proof> connection;
};

// Rep(⟨u_0..u_n⟩, u′). Requires u_n ≤_F u′.
StatePtr rep(const StatePtr& u, const Path& path, const StatePtr& replacement);
// App(u, U) and App(⟨u_0..u_n⟩, U). Edge invariants are checked against the
// target base.
StatePtr app(const StatePtr& u, std::vector<NewChild> children, const WitnessRegistry& reg);
StatePtr app(const StatePtr& u, const Path& path, std::vector<NewChild> children, const WitnessRegistry& reg);
// Boost(u, c).
StatePtr boost(const StatePtr& u, const BasicState& c);
// Connection proofs of a boosted edge, reindexed to the boosted child.
std::vector<Proof> boost_connection(const Edge& e, const BasicState& c, const BasicState& boosted_child);

}  // namespace intentic
