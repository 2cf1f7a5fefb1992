#include <gtest/gtest.h>

#include "intentic/frames.hpp"
#include "intentic/io.hpp"

using namespace intentic;

namespace {

const WitnessRegistry kNone;

GenParams params(std::uint64_t seed, int depth = 3) {
  GenParams p;
  p.seed = seed;
  p.max_depth = depth;
  return p;
}

}  // namespace

TEST(Generate, DepthZeroIsLeaf) {
  for (std::uint64_t s = 0; s < 20; ++s) EXPECT_TRUE(gen_state(params(s, 0))->children().empty());
}

TEST(Generate, Deterministic) {
  for (std::uint64_t s = 0; s < 20; ++s)
    EXPECT_EQ(io::to_json(*gen_state(params(s))).dump(), io::to_json(*gen_state(params(s))).dump());
}

TEST(Generate, StatesValidate) {
  for (std::uint64_t s = 0; s < 1000; ++s) {
    StatePtr u = gen_state(params(s));
    ASSERT_NO_THROW(validate(*u, kNone)) << s;
    EXPECT_LE(u->depth(), 3u);
  }
}

TEST(Generate, WitnessesAccepted) {
  for (std::uint64_t s = 0; s < 300; ++s) {
    GenParams p = params(s);
    FrameRng rng(s);
    StatePtr u = gen_state(p);
    MTWitness w = gen_witness(*u, p, rng, 2);
    EXPECT_TRUE(accepts_mt_witness(*u, w.formula(), w, kNone)) << s;
  }
}

TEST(LocalJoin, SelfJoin) {
  StatePtr u = gen_state(params(7));
  StatePtr j = local_join(*u, *u, *u);
  EXPECT_EQ(j->key(), u->key());
}

TEST(LocalJoin, UpperBound) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    GenParams p = params(s);
    FrameRng rng(s);
    StatePtr u = gen_state(p);
    StatePtr v = gen_fine_extension(u, p, rng, kNone);
    StatePtr w = gen_fine_extension(u, p, rng, kNone);
    StatePtr j = local_join(*u, *v, *w);
    EXPECT_TRUE(is_fine_ext(*v, *j)) << s;
    EXPECT_TRUE(is_fine_ext(*w, *j)) << s;
  }
}

TEST(LocalJoin, MismatchedBasesThrow) {
  StatePtr u = IntenticState::leaf(BasicState());
  StatePtr v = IntenticState::leaf(BasicState({Formula::atom("P", {Term::constant("c1")})}));
  EXPECT_ANY_THROW(local_join(*u, *v, *u));
}

TEST(Commutation, LeafOverItself) {
  StatePtr v = IntenticState::leaf(BasicState({Formula::atom("P", {Term::constant("c1")})}));
  Commutation c(v, v, kNone);
  verify_fine_cert(*v, *c.state(), c.cert());
  MTWitness w = base_witness(Formula::atom("P", {Term::constant("c1")}));
  MTWitness t = c.transport(w);
  check_mt_witness(*c.state(), t.formula(), t, kNone);
}

TEST(Commutation, EmptyBase) {
  StatePtr v = gen_state(params(3));
  StatePtr w = IntenticState::leaf(BasicState());
  Commutation c(v, w, kNone);
  Formula p = Formula::atom("Q", {Term::constant("c2")});
  MTWitness lem;
  lem.closing = nd::lem(p);
  MTWitness t = c.transport(lem);
  check_mt_witness(*c.state(), t.formula(), t, kNone);
}

TEST(Fuzz, FrameAndChainTrials) {
  FuzzSummary s = fuzz_frames(100, 400, params(0), kNone);
  EXPECT_EQ(s.fail, 0u) << (s.failures.empty() ? "" : s.failures.front());
  EXPECT_EQ(s.line(), "trials=400 pass=400 fail=0");
}
