#pragma once

#include <optional>
#include <string>
#include <vector>

#include "intentic/kernel.hpp"
#include "intentic/syntax.hpp"

namespace intentic {

struct NamedAxiom {
  std::string name;
  Formula formula;
};

// Subformula pattern: `vars` are the enclosing quantified variables that
// occur free in `formula` and may be instantiated.
struct Template {
  Formula formula;
  std::vector<std::string> vars;
};

struct UniMatch {
  std::string axiom;
  Substitution instantiation;
  Proof proof;  // ∀E chain from the closed axiom
};

class AxiomBase {
 public:
  // Relational PA axioms over S/2, Add/3, Mul/3, =/2 and the constant 0.
  static AxiomBase relational_pa();

  const Signature& signature() const { return sig_; }
  Signature& signature() { return sig_; }
  const std::vector<NamedAxiom>& axioms() const { return axioms_; }

  // Throws std::invalid_argument unless f is a sentence.
  void add_extra(const Formula& f);
  void add_constant(const std::string& name);
  bool remove(const std::string& name);
  // Lines: blank, `# comment`, `const NAME...`, or a closed formula.
  void load_extras(std::string_view text);
  std::vector<Term> constants() const;

  // Closed axiom up to alpha-equivalence, a stripped axiom matrix under an
  // injective renaming of the stripped variables, or a LEM or IND instance
  // (possibly universally closed).
  bool is_axiom(const Formula& f) const;
  const NamedAxiom* find_closed(const Formula& f) const;
  static bool is_lem_instance(const Formula& f);
  static bool is_ind_instance(const Formula& f);

  // Axiom whose matrix, after stripping leading universals and substituting
  // terms, is alpha-equal to f.
  std::optional<UniMatch> uni(const Formula& f) const;

  // f matches a positive subformula of a closed axiom.
  bool pos_sub_axiom(const Formula& f) const;
  const std::vector<Template>& positive_templates() const { return templates_; }

 private:
  void rebuild();

  Signature sig_;
  std::vector<NamedAxiom> axioms_;
  std::vector<Template> templates_;
  std::size_t extra_count_ = 0;
};

// Binds `vars` so that pattern becomes alpha-equal to target. Existing
// bindings are respected.
bool match_template(const Formula& pattern, const Formula& target, const std::vector<std::string>& vars,
                    Substitution& binding);

struct SearchConfig {
  int depth = 12;
  bool allow_efq = false;
  bool trace = false;
  bool memo = true;
};

struct SearchResult {
  enum class Verdict { Proved, Exhausted };
  Verdict verdict = Verdict::Exhausted;
  std::optional<Proof> proof;
  // Exhausted only because some branch hit the depth bound.
  bool depth_limited = false;
  std::size_t nodes = 0;
  std::vector<std::string> trace;
  std::vector<Term> pool;
};

// Bounded non-hypothetical proof search. Witness constants introduced by ∃E′
// are registered in `reg`. Every returned proof is kernel-checked and
// axiomatic.
SearchResult prove(const Formula& goal, const AxiomBase& base, const SearchConfig& cfg, WitnessRegistry& reg);

}  // namespace intentic
