#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "intentic/pasearch.hpp"
#include "intentic/syntax.hpp"

using namespace intentic;
using intentic::testing::F;

namespace {

Signature open_sig() {
  Signature s;
  s.set_open(true);
  s.add_constant("0");
  s.add_constant("c");
  return s;
}

bool has(const std::vector<Formula>& fs, const Formula& f) { return std::find(fs.begin(), fs.end(), f) != fs.end(); }

}  // namespace

TEST(Parse, Atom) {
  Formula f = F("P(x)");
  ASSERT_TRUE(f.is(Connective::Atom));
  EXPECT_EQ(f.relation(), "P");
  ASSERT_EQ(f.args().size(), 1u);
  EXPECT_TRUE(f.args()[0].is_variable());
  EXPECT_EQ(f.args()[0].name, "x");
}

TEST(Parse, ImplicationIsRightAssociative) {
  Formula f = F("P(x) -> Q(x) -> R(x)");
  ASSERT_TRUE(f.is(Connective::Implies));
  EXPECT_TRUE(f.identical(Formula::implies(F("P(x)"), Formula::implies(F("Q(x)"), F("R(x)")))));
}

TEST(Parse, Precedence) {
  Formula f = F("~P(x) & Q(x) | R(x) -> P(c)");
  Formula want = Formula::implies(Formula::disj(Formula::conj(Formula::negation(F("P(x)")), F("Q(x)")), F("R(x)")),
                                  F("P(c)"));
  EXPECT_TRUE(f.identical(want));
  EXPECT_TRUE(F("P(c) & Q(c) & R(c)").identical(Formula::conj(F("P(c)"), Formula::conj(F("Q(c)"), F("R(c)")))));
}

TEST(Parse, QuantifierScopesRight) {
  Formula f = F("forall x. P(x) -> exists y. S(x,y) & Q(y)");
  ASSERT_TRUE(f.is(Connective::ForAll));
  ASSERT_TRUE(f.body().is(Connective::Implies));
  EXPECT_TRUE(f.body().rhs().is(Connective::Exists));
  EXPECT_TRUE(f.is_sentence());
  EXPECT_TRUE(F("(forall x. P(x)) -> P(c)").is(Connective::Implies));
}

TEST(Parse, EqualityAndFalse) {
  Signature sig = open_sig();
  WitnessRegistry reg;
  Formula f = parse_formula("0 = c -> false", sig, reg);
  ASSERT_TRUE(f.is(Connective::Implies));
  EXPECT_TRUE(f.rhs().is(Connective::Falsum));
  EXPECT_TRUE(f.is_negation());
}

TEST(Parse, Errors) {
  Signature sig = intentic::testing::corpus_signature();
  WitnessRegistry reg;
  const Signature& fixed = sig;
  EXPECT_THROW(parse_formula("P(x", fixed, reg), ParseError);
  EXPECT_THROW(parse_formula("T(x)", fixed, reg), ParseError);
  EXPECT_THROW(parse_formula("P(x,c)", fixed, reg), ParseError);
  EXPECT_NO_THROW(parse_formula("P(e)", fixed, reg));
  EXPECT_THROW(parse_formula("P(#0)", fixed, reg), ParseError);
  EXPECT_THROW(parse_formula("P(c) &", fixed, reg), ParseError);
  EXPECT_THROW(parse_formula("forall . P(c)", fixed, reg), ParseError);
  try {
    parse_formula("P(c) & ", fixed, reg);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_GE(e.position(), 6u);
  }
}

TEST(Parse, OpenSignatureRecordsArity) {
  Signature sig = open_sig();
  WitnessRegistry reg;
  parse_formula("T(0, c)", sig, reg);
  EXPECT_EQ(sig.arity("T"), 2);
  EXPECT_THROW(parse_formula("T(0)", sig, reg), ParseError);
}

TEST(Parse, WitnessConstants) {
  Signature sig = open_sig();
  WitnessRegistry reg;
  auto id = reg.register_witness(parse_formula("exists y. S(x,y)", sig, reg));
  Formula f = parse_formula("P(#" + std::to_string(id) + ")", sig, reg);
  EXPECT_EQ(f.args()[0].kind, Term::Kind::Witness);
  EXPECT_EQ(to_string(f), "P(#0)");
}

TEST(Print, RoundTripKeepsStructure) {
  for (const char* t : {"~~P(c)", "(P(c) -> Q(c)) -> R(c)", "forall x. exists y. S(x,y)", "~(P(c) & Q(c))",
                        "(exists x. P(x)) | R(c)", "P(c) & (Q(c) | R(c))"}) {
    Formula f = F(t);
    EXPECT_TRUE(F(to_string(f)).identical(f)) << t;
  }
}

TEST(Print, FuzzRoundTrip) {
  Signature sig = intentic::testing::fuzz_signature();
  WitnessRegistry reg;
  reg.register_witness(parse_formula("exists y. S(x,y)", sig, reg));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    Formula f = intentic::testing::random_formula(rng, 5, reg);
    Formula g = parse_formula(to_string(f), static_cast<const Signature&>(sig), reg);
    ASSERT_EQ(f, g) << to_string(f);
    ASSERT_TRUE(f.identical(g)) << to_string(f);
  }
}

TEST(Alpha, EqualityIgnoresBoundNames) {
  EXPECT_EQ(F("forall x. P(x)"), F("forall y. P(y)"));
  EXPECT_FALSE(F("forall x. P(x)").identical(F("forall y. P(y)")));
  EXPECT_NE(F("forall x. S(x,y)"), F("forall y. S(y,y)"));
  EXPECT_NE(F("P(x)"), F("P(y)"));
}

TEST(Substitute, Examples) {
  Term zero = Term::constant("0");
  Signature sig = open_sig();
  WitnessRegistry reg;
  auto p = [&](const char* t) { return parse_formula(t, sig, reg); };
  EXPECT_TRUE(substitute(p("exists y. S(x,y)"), "x", zero).identical(p("exists y. S(0,y)")));
  EXPECT_TRUE(substitute(p("forall x. P(x)"), "x", Term::constant("c")).identical(p("forall x. P(x)")));
  Formula r = substitute(p("exists y. S(x,y)"), "x", Term::variable("y"));
  ASSERT_TRUE(r.is(Connective::Exists));
  EXPECT_NE(r.bound_var(), "y");
  EXPECT_EQ(r, p("exists z. S(y,z)"));
}

TEST(Substitute, Simultaneous) {
  Substitution s{{"x", Term::variable("y")}, {"y", Term::variable("x")}};
  EXPECT_TRUE(substitute(F("S(x,y)"), s).identical(F("S(y,x)")));
}

TEST(PosSub, Polarity) {
  auto pos = positive_subformulas(F("P(c) -> Q(c)"));
  EXPECT_TRUE(has(pos, F("Q(c)")));
  EXPECT_FALSE(has(pos, F("P(c)")));
  pos = positive_subformulas(F("(P(c) -> false) -> false"));
  EXPECT_TRUE(has(pos, F("P(c)")));
  EXPECT_FALSE(has(pos, F("P(c) -> false")));
}

TEST(PosSub, ContainsEachPaAxiom) {
  AxiomBase base = AxiomBase::relational_pa();
  ASSERT_EQ(base.axioms().size(), 18u);
  for (const auto& ax : base.axioms()) EXPECT_TRUE(has(positive_subformulas(ax.formula), ax.formula)) << ax.name;
}

TEST(PosSub, ScopeRecordsBinders) {
  auto subs = polarized_subformulas(F("forall x. exists y. S(x,y)"));
  bool seen = false;
  for (const auto& s : subs)
    if (s.formula.is(Connective::Atom)) {
      seen = true;
      EXPECT_EQ(s.scope, (std::vector<std::string>{"x", "y"}));
      EXPECT_EQ(s.polarity, Polarity::Positive);
    }
  EXPECT_TRUE(seen);
}

TEST(Registry, Idempotent) {
  WitnessRegistry reg;
  auto a = reg.register_witness(F("exists y. S(x,y)"));
  auto b = reg.register_witness(F("exists y. S(x,y)"));
  auto c = reg.register_witness(F("exists z. S(w,z)"));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_EQ(reg.size(), 1u);
  EXPECT_NE(reg.register_variant(F("exists y. S(x,y)")), a);
  EXPECT_EQ(reg.lookup(F("exists y. S(x,y)")), a);
}

TEST(Registry, Layers) {
  WitnessRegistry reg;
  auto a = reg.register_witness(F("P(x)"));
  EXPECT_EQ(reg.entry(a).layer, 1u);
  Formula psi = Formula::conj(F("Q(x)"), Formula::atom("P", {Term::witness_constant(a)}));
  auto b = reg.register_witness(psi);
  EXPECT_EQ(reg.entry(b).layer, 2u);
  EXPECT_EQ(reg.instance(a), Formula::atom("P", {Term::witness_constant(a)}));
}

TEST(Registry, RejectsBadFormulas) {
  WitnessRegistry reg;
  EXPECT_THROW(reg.register_witness(F("S(x,y)")), std::invalid_argument);
  EXPECT_THROW(reg.register_witness(F("P(c)")), std::invalid_argument);
}

TEST(Registry, TsvRoundTrip) {
  WitnessRegistry reg;
  auto a = reg.register_witness(F("exists y. S(x,y)"));
  reg.register_witness(Formula::atom("S", {Term::variable("z"), Term::witness_constant(a)}));
  Signature sig = intentic::testing::corpus_signature();
  WitnessRegistry back = WitnessRegistry::from_tsv(reg.to_tsv(), sig);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back.entry(1).layer, 2u);
  EXPECT_EQ(back.to_tsv(), reg.to_tsv());
}
