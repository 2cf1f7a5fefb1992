#include <gtest/gtest.h>

#include "corpus.hpp"
#include "intentic/io.hpp"
#include "intentic/kernel.hpp"
#include "intentic/pasearch.hpp"

using namespace intentic;
using intentic::testing::F;

namespace {

const WitnessRegistry kNone;

Formula pa(const char* text) {
  static const Signature sig = Signature::relational_pa();
  return parse_formula(text, sig, kNone);
}

std::string reason_of(const Proof& p, Logic logic, const WitnessRegistry& reg = kNone) {
  try {
    check_proof(p, logic, reg);
  } catch (const Rejected& r) {
    return r.path() + ": " + r.reason();
  }
  return {};
}

}  // namespace

TEST(Kernel, AssumptionValidInBothLogics) {
  Proof p = nd::assume(F("P(x)"));
  for (Logic lg : {Logic::Classical, Logic::NonHypothetical}) {
    Judgment j = check_proof(p, lg, kNone);
    EXPECT_EQ(j.conclusion, F("P(x)"));
    EXPECT_EQ(j.open_assumptions, std::vector<Formula>{F("P(x)")});
  }
}

TEST(Kernel, ImpIntroOnlyClassical) {
  Proof p = nd::imp_intro(F("P(c)"), "h", nd::assume(F("P(c)"), "h"));
  Judgment j = check_proof(p, Logic::Classical, kNone);
  EXPECT_TRUE(j.open_assumptions.empty());
  EXPECT_EQ(j.conclusion, F("P(c) -> P(c)"));
  std::string why = reason_of(p, Logic::NonHypothetical);
  EXPECT_NE(why.find("root"), std::string::npos);
  EXPECT_NE(why.find("imp_i"), std::string::npos);
}

TEST(Kernel, OrElimPrimeJudgment) {
  Proof p = nd::or_elim_nh(nd::assume(F("P(c) | Q(c)")), nd::assume(F("P(c) -> R(c)")), nd::assume(F("Q(c) -> R(c)")));
  for (Logic lg : {Logic::NonHypothetical, Logic::Classical}) {
    Judgment j = check_proof(p, lg, kNone);
    EXPECT_EQ(j.conclusion, F("R(c)"));
    std::vector<Formula> want = canonicalize({F("P(c) | Q(c)"), F("P(c) -> R(c)"), F("Q(c) -> R(c)")});
    EXPECT_EQ(j.open_assumptions, want);
  }
}

TEST(Kernel, HypotheticalRulesRejectedNonHypothetically) {
  Proof orE = nd::or_elim(nd::lem(F("P(c)")), "l", nd::or_intro_left(nd::assume(F("P(c)"), "l"), F("Q(c)")), "r",
                          nd::or_intro_left(nd::assume(F("P(c)")), F("Q(c)")));
  EXPECT_TRUE(try_check_proof(orE, Logic::Classical, kNone));
  EXPECT_FALSE(try_check_proof(orE, Logic::NonHypothetical, kNone));
  Proof exE = nd::exists_elim(nd::assume(F("exists x. P(x)")), "a", "h",
                              nd::exists_intro(nd::assume(F("P(a)"), "h"), F("exists y. P(y)"), Term::variable("a")));
  EXPECT_TRUE(try_check_proof(exE, Logic::Classical, kNone));
  EXPECT_NE(reason_of(exE, Logic::NonHypothetical).find("ex_e"), std::string::npos);
}

TEST(Kernel, DischargeAnnotationRejectedNonHypothetically) {
  EXPECT_TRUE(try_check_proof(nd::assume(F("P(c)"), "h"), Logic::NonHypothetical, kNone));
  Proof p = Proof::node(Rule::AndIntro, F("P(c) & P(c)"), {nd::assume(F("P(c)"), "h"), nd::assume(F("P(c)"))},
                        {"", {"h"}, {}, {}});
  EXPECT_FALSE(try_check_proof(p, Logic::NonHypothetical, kNone));
}

TEST(Kernel, DischargeMustMatchFormula) {
  // Label h is attached to Q(c) but discharged as P(c).
  Proof bad = Proof::node(Rule::ImpIntro, F("P(c) -> Q(c)"), {nd::assume(F("Q(c)"), "h")}, {"", {"h"}, {}, {}});
  EXPECT_FALSE(try_check_proof(bad, Logic::Classical, kNone));
}

TEST(Kernel, ForallEigenvariableCondition) {
  Proof ok = nd::forall_intro(nd::lem(F("P(a)")), "a", "x");
  EXPECT_TRUE(try_check_proof(ok, Logic::NonHypothetical, kNone));
  Proof bad = Proof::node(Rule::ForallIntro, F("forall x. P(x)"), {nd::assume(F("P(a)"))}, {"", {}, "a", {}});
  std::string why = reason_of(bad, Logic::Classical);
  EXPECT_FALSE(why.empty());
}

TEST(Kernel, ExistsEigenvariableCondition) {
  // Eigenvariable escapes into the conclusion.
  Proof bad = Proof::node(Rule::ExistsElim, F("P(a)"),
                          {nd::assume(F("exists x. P(x)")), nd::assume(F("P(a)"), "h")}, {"", {"h"}, "a", {}});
  EXPECT_FALSE(try_check_proof(bad, Logic::Classical, kNone));
}

TEST(Kernel, LemShape) {
  Proof l = nd::lem(F("P(c)"));
  EXPECT_EQ(l.conclusion(), F("P(c) | ~P(c)"));
  Proof wrong = Proof::node(Rule::Lem, F("P(c) | Q(c)"), {});
  EXPECT_FALSE(try_check_proof(wrong, Logic::Classical, kNone));
}

TEST(Kernel, ExistsElimPrimeNeedsCanonicalWitness) {
  WitnessRegistry reg;
  Formula body = F("P(x) & Q(x)");
  Term c = Term::witness_constant(reg.register_witness(body));
  Formula inst = substitute(body, "x", c);
  Proof ok = nd::exists_elim_nh(nd::assume(F("exists x. P(x) & Q(x)")), nd::assume(Formula::implies(inst, F("R(d)"))), c);
  EXPECT_TRUE(try_check_proof(ok, Logic::NonHypothetical, reg));

  Term variant = Term::witness_constant(reg.register_variant(body));
  Proof bad = Proof::node(Rule::ExistsElimNH, F("R(d)"),
                          {nd::assume(F("exists x. P(x) & Q(x)")),
                           nd::assume(Formula::implies(substitute(body, "x", variant), F("R(d)")))},
                          {"", {}, {}, variant});
  EXPECT_FALSE(try_check_proof(bad, Logic::NonHypothetical, reg));

  WitnessRegistry empty;
  EXPECT_FALSE(try_check_proof(ok, Logic::NonHypothetical, empty));
}

TEST(Kernel, ExistsElimPrimeNeedsSoleFreeVariable) {
  WitnessRegistry reg;
  Proof p = Proof::node(Rule::ExistsElimNH, F("R(d)"),
                        {nd::assume(F("exists x. S(x,y)")), nd::assume(F("S(c,y) -> R(d)"))});
  EXPECT_NE(reason_of(p, Logic::NonHypothetical, reg).find("sole free variable"), std::string::npos);
}

TEST(Kernel, RejectionPathNamesNode) {
  Proof inner = Proof::node(Rule::AndElimLeft, F("Q(c)"), {nd::assume(F("P(c) & Q(c)"))});
  Proof p = nd::and_intro(nd::assume(F("R(c)")), inner);
  EXPECT_EQ(reason_of(p, Logic::Classical).rfind("root.1", 0), 0u);
}

TEST(Kernel, UnknownWitnessConstantRejected) {
  Proof p = nd::assume(Formula::atom("P", {Term::witness_constant(5)}));
  EXPECT_FALSE(try_check_proof(p, Logic::Classical, kNone));
}

TEST(Axiomatic, Examples) {
  AxiomBase base = AxiomBase::relational_pa();
  auto oracle = [&](const Formula& f) { return base.is_axiom(f); };
  EXPECT_TRUE(axiomatic(nd::lem(pa("S(0,0)")), oracle));
  EXPECT_TRUE(axiomatic(nd::assume(pa("forall x. exists y. S(x,y)")), oracle));
  EXPECT_FALSE(axiomatic(nd::assume(pa("S(0,0)")), oracle));
}

TEST(Axiomatic, IgnoresDischargedLeaves) {
  auto never = [](const Formula&) { return false; };
  EXPECT_TRUE(axiomatic(nd::imp_intro(F("P(c)"), "h", nd::assume(F("P(c)"), "h")), never));
}

TEST(SubstituteProof, ReplacesEigenvariable) {
  Proof p = nd::and_intro(nd::lem(F("P(a)")), nd::assume(F("Q(a)")));
  Proof q = substitute_proof(p, "a", Term::constant("c"));
  Judgment j = check_proof(q, Logic::NonHypothetical, kNone);
  EXPECT_EQ(j.conclusion, F("(P(c) | ~P(c)) & Q(c)"));
  EXPECT_EQ(j.open_assumptions, std::vector<Formula>{F("Q(c)")});
}

TEST(Differential, NonHypotheticalImpliesClassical) {
  WitnessRegistry reg;
  auto corpus = intentic::testing::differential_corpus(11, 240, reg);
  std::size_t nh_accepted = 0, hypothetical = 0;
  for (const auto& p : corpus) {
    auto c = try_check_proof(p, Logic::Classical, reg);
    auto n = try_check_proof(p, Logic::NonHypothetical, reg);
    if (n) {
      ++nh_accepted;
      ASSERT_TRUE(c);
      EXPECT_EQ(c->conclusion, n->conclusion);
      EXPECT_EQ(c->open_assumptions, n->open_assumptions);
    }
    if (contains_hypothetical_rule(p)) {
      ++hypothetical;
      EXPECT_FALSE(n);
    }
  }
  EXPECT_GT(nh_accepted, 40u);
  EXPECT_GT(hypothetical, 40u);
}

TEST(ProofJson, RoundTrip) {
  WitnessRegistry reg;
  Signature sig = intentic::testing::corpus_signature();
  io::Context ctx{sig, reg};
  for (const auto& c : intentic::testing::soundness_corpus(5, 10)) {
    io::json j = io::to_json(c.proof);
    Proof back = io::proof_from_json(io::json::parse(j.dump()), ctx);
    EXPECT_EQ(io::to_json(back).dump(), j.dump()) << c.name;
    EXPECT_TRUE(try_check_proof(back, Logic::Classical, reg)) << c.name;
  }
}

TEST(ProofJson, Malformed) {
  WitnessRegistry reg;
  Signature sig = intentic::testing::corpus_signature();
  io::Context ctx{sig, reg};
  EXPECT_THROW(io::proof_from_json(io::json::parse(R"j({"rule":"teleport","conclusion":"P(c)"})j"), ctx), io::FormatError);
  EXPECT_THROW(io::proof_from_json(io::json::parse(R"j({"conclusion":"P(c)"})j"), ctx), io::FormatError);
  EXPECT_THROW(io::proof_from_json(io::json::parse(R"j({"rule":"assume","conclusion":"P(c"})j"), ctx), ParseError);
  EXPECT_THROW(io::payload(io::json::parse(R"j({"format_version":9,"proof":{}})j"), "proof"), io::FormatError);
}
