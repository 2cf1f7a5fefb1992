// Prints one PASS/FAIL line per acceptance criterion. Exit status is the
// number of failing criteria.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "corpus.hpp"
#include "intentic/frames.hpp"
#include "intentic/pasearch.hpp"
#include "intentic/transform.hpp"

using namespace intentic;
using intentic::testing::F;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void criterion(int n, const char* name, double limit, const std::function<Verdict()>& body) {
  auto t0 = Clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  double dt = seconds_since(t0);
  if (limit > 0 && dt >= limit) {
    v.ok = false;
    v.detail += " (over " + std::to_string(static_cast<int>(limit)) + " s)";
  }
  if (!v.ok) ++failures;
  std::printf("criterion %d %-28s %s  %.2fs  %s\n", n, name, v.ok ? "PASS" : "FAIL", dt, v.detail.c_str());
  std::fflush(stdout);
}

std::string str(std::size_t n) { return std::to_string(n); }

bool subset(const std::vector<Formula>& xs, const std::vector<Formula>& ys) {
  return std::all_of(xs.begin(), xs.end(), [&](const Formula& x) { return std::find(ys.begin(), ys.end(), x) != ys.end(); });
}

Verdict differential() {
  WitnessRegistry reg;
  auto corpus = intentic::testing::differential_corpus(2024, 400, reg);
  std::size_t nh = 0, hyp = 0, bad = 0;
  for (const auto& p : corpus) {
    auto c = try_check_proof(p, Logic::Classical, reg);
    auto n = try_check_proof(p, Logic::NonHypothetical, reg);
    if (n) {
      ++nh;
      if (!c || c->conclusion != n->conclusion || c->open_assumptions != n->open_assumptions) ++bad;
    }
    if (contains_hypothetical_rule(p)) {
      ++hyp;
      if (n) ++bad;
    }
  }
  return {bad == 0 && corpus.size() >= 200,
          "proofs=" + str(corpus.size()) + " nh_accepted=" + str(nh) + " hypothetical=" + str(hyp) + " violations=" + str(bad)};
}

struct RoundTrip {
  std::size_t sound = 0, complete = 0, total = 0;
  std::string first_failure;
};

RoundTrip& round_trips() {
  static RoundTrip rt;
  return rt;
}

Verdict soundness() {
  auto corpus = intentic::testing::soundness_corpus();
  RoundTrip& rt = round_trips();
  rt.total = corpus.size();
  for (Rule r : {Rule::ImpIntro, Rule::OrElim, Rule::ExistsElim, Rule::Lem, Rule::ForallIntro, Rule::ForallElim,
                 Rule::ExistsIntro, Rule::FalsumElim, Rule::AndIntro, Rule::AndElimLeft, Rule::AndElimRight,
                 Rule::OrIntroLeft, Rule::OrIntroRight, Rule::ImpElim, Rule::Assume})
    if (std::none_of(corpus.begin(), corpus.end(), [&](const auto& c) { return contains_rule(c.proof, r); }))
      return {false, "corpus lacks rule " + std::string(rule_name(r))};
  for (const auto& c : corpus) {
    if (c.proof.height() > 6) return {false, c.name + " exceeds height 6"};
    WitnessRegistry reg;
    try {
      Entailment e = entail(c.gamma, c.proof, reg);
      validate(*e.result.state, reg);
      verify_fine_cert(*e.root, *e.result.state, e.result.fine_cert);
      check_mt_witness(*e.result.state, c.proof.conclusion(), e.result.witness, reg);
      ++rt.sound;
      Proof back = extract(*e.result.state, e.result.witness, reg);
      Judgment j = check_proof(back, Logic::Classical, reg);
      if (j.conclusion == c.proof.conclusion() && subset(j.open_assumptions, c.gamma))
        ++rt.complete;
      else if (rt.first_failure.empty())
        rt.first_failure = c.name + ": extracted judgment differs";
    } catch (const std::exception& ex) {
      if (rt.first_failure.empty()) rt.first_failure = c.name + ": " + ex.what();
    }
  }
  std::string d = "corpus=" + str(rt.total) + " verified=" + str(rt.sound);
  if (!rt.first_failure.empty()) d += " first failure " + rt.first_failure;
  return {rt.total >= 50 && rt.sound == rt.total, d};
}

Verdict completeness() {
  const RoundTrip& rt = round_trips();
  std::string d = "corpus=" + str(rt.total) + " extracted=" + str(rt.complete);
  return {rt.total >= 50 && rt.complete == rt.total, d};
}

Verdict trials(bool chains) {
  GenParams params;
  params.max_depth = 3;
  params.max_branching = 3;
  WitnessRegistry reg;
  std::size_t pass = 0;
  std::string first;
  const std::size_t n = 1000;
  for (std::uint64_t s = 0; s < n; ++s) {
    TrialReport r = chains ? chain_trial(s, params, reg) : frame_trial(s, params, reg);
    if (r.ok)
      ++pass;
    else if (first.empty())
      first = " first failure seed " + std::to_string(s) + ": " + r.failure;
  }
  return {pass == n, "trials=" + str(n) + " pass=" + str(pass) + first};
}

Verdict pa_corpus() {
  AxiomBase base = AxiomBase::relational_pa();
  std::vector<std::string> positives;
  for (const auto& ax : base.axioms()) positives.push_back(to_string(ax.formula));
  for (const char* g : {"exists y. S(0,y)", "exists z. Add(0,0,z)", "exists z. Mul(0,0,z)", "0 = 0", "Add(0,0,0)",
                        "Mul(0,0,0)", "~S(0,0)", "forall x. Add(x,0,x)"})
    positives.push_back(g);

  std::size_t proved = 0, exhausted = 0;
  double slowest = 0;
  std::string first;
  auto note = [&](const std::string& s) {
    if (first.empty()) first = " first failure: " + s;
  };

  for (const auto& text : positives) {
    WitnessRegistry reg;
    Formula goal = parse_formula(text, base.signature(), reg);
    auto t0 = Clock::now();
    SearchResult r = prove(goal, base, {}, reg);
    double dt = seconds_since(t0);
    slowest = std::max(slowest, dt);
    if (r.verdict != SearchResult::Verdict::Proved || !r.proof) {
      note(text + " not proved");
      continue;
    }
    auto j = try_check_proof(*r.proof, Logic::NonHypothetical, reg);
    bool ok = j && j->conclusion == goal && !contains_rule(*r.proof, Rule::ImpIntro) &&
              axiomatic(*r.proof, [&](const Formula& a) { return base.is_axiom(a); }) && dt < 10;
    ok ? ++proved : (note(text + " output check failed"), 0);
  }

  AxiomBase corrupted = base;
  for (const char* ax : {"E1", "A1", "M1"}) corrupted.remove(ax);
  std::vector<std::pair<std::string, const AxiomBase*>> negatives{
      {"S(0,0)", &base}, {"false", &base}, {"0 = 0", &corrupted}, {"S(0,0) -> S(0,0)", &base}};
  for (const auto& [text, b] : negatives) {
    WitnessRegistry reg;
    Formula goal = parse_formula(text, b->signature(), reg);
    auto t0 = Clock::now();
    SearchResult r = prove(goal, *b, {}, reg);
    double dt = seconds_since(t0);
    slowest = std::max(slowest, dt);
    if (r.verdict == SearchResult::Verdict::Exhausted && dt < 10)
      ++exhausted;
    else
      note(text + " not exhausted");
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, " slowest=%.2fs", slowest);
  return {proved == positives.size() && positives.size() >= 12 && exhausted == negatives.size(),
          "positives=" + str(proved) + "/" + str(positives.size()) + " negatives=" + str(exhausted) + "/" +
              str(negatives.size()) + buf + first};
}

// Random witnesses for ⊥ built by mutating accepted witnesses and by
// assembling plausible closings from the base.
class Mutator {
 public:
  Mutator(std::uint64_t seed, const GenParams& params) : rng_(seed), params_(params) {}

  MTWitness next(const IntenticState& u) {
    MTWitness w;
    switch (rng_.below(7)) {
      case 0: {  // accepted witness with its closing relabelled
        w = gen_witness(u, params_, rng_, 2);
        w.closing = relabel(w.closing, Formula::falsum());
        if (!w.steps.empty() && rng_.coin(50)) w.steps.clear();
        break;
      }
      case 1:  // modus ponens against an unavailable negation
        w.closing = nd::imp_elim(nd::assume(Formula::negation(gen_atom(params_, rng_))), nd::assume(gen_atom(params_, rng_)));
        break;
      case 2: {  // ∨E′ over LEM with forged branch implications
        Formula a = gen_atom(params_, rng_);
        w.closing = nd::or_elim_nh(nd::lem(a), nd::assume(Formula::negation(a)),
                                   nd::assume(Formula::implies(Formula::negation(a), Formula::falsum())));
        break;
      }
      case 3:  // generator used as if it were ⊥
        w.closing = relabel(nd::assume(pick_generator(u)), Formula::falsum());
        break;
      case 4: {  // hypothetical closing
        Formula a = gen_atom(params_, rng_);
        w.closing = relabel(nd::imp_intro(a, "h", nd::assume(a, "h")), Formula::falsum());
        break;
      }
      case 5: {  // ∧E on a forged conjunction
        Formula g = pick_generator(u);
        w.closing = nd::and_elim_right(nd::assume(Formula::conj(g, Formula::falsum())));
        break;
      }
      default: {  // bare assumption of ⊥ with spliced child steps
        w.closing = nd::assume(Formula::falsum());
        if (!u.children().empty()) {
          std::size_t e = rng_.below(u.children().size());
          ChildStep step;
          step.edge = e;
          step.antecedent = u.children()[e].hypothesis;
          step.consequent = base_witness(Formula::falsum());
          w.steps.push_back(std::move(step));
        }
        break;
      }
    }
    return w;
  }

 private:
  Formula pick_generator(const IntenticState& u) {
    const auto& g = u.base().generators();
    return g.empty() ? gen_atom(params_, rng_) : g[rng_.below(g.size())];
  }
  static Proof relabel(const Proof& p, const Formula& conclusion) {
    return Proof::node(p.rule(), conclusion, p.premises(), p.annotations());
  }

  FrameRng rng_;
  GenParams params_;
};

Verdict consistency() {
  GenParams params;
  params.constants = {"c", "d"};
  WitnessRegistry reg;
  BasicState base({Formula::atom("P", {Term::constant("c")})});
  Mutator mut(7, params);
  std::size_t accepted = 0, tried = 0;
  const std::size_t n = 10000;
  for (std::uint64_t s = 0; s < n; s += 50) {
    FrameRng rng(s);
    StatePtr u = gen_state(params, rng, base, 3);
    validate(*u, reg);
    for (int k = 0; k < 50; ++k, ++tried)
      if (accepts_mt_witness(*u, Formula::falsum(), mut.next(*u), reg)) ++accepted;
  }
  // Control: against an inconsistent base the checker does accept ⊥.
  Formula pc = Formula::atom("P", {Term::constant("c")});
  StatePtr bad = IntenticState::leaf(BasicState({pc, Formula::negation(pc)}));
  MTWitness control;
  control.closing = nd::imp_elim(nd::assume(Formula::negation(pc)), nd::assume(pc));
  bool control_ok = accepts_mt_witness(*bad, Formula::falsum(), control, reg);
  return {accepted == 0 && tried == n && control_ok, "mutations=" + str(tried) + " accepted=" + str(accepted) +
                                                         " control=" + (control_ok ? "accepted" : "rejected")};
}

Verdict parser() {
  Signature sig = intentic::testing::fuzz_signature();
  WitnessRegistry reg;
  reg.register_witness(parse_formula("exists y. S(x,y)", sig, reg));
  const Signature& fixed = sig;
  std::mt19937_64 rng(8);
  std::size_t ok = 0;
  const std::size_t n = 10000;
  for (std::size_t i = 0; i < n; ++i) {
    Formula f = intentic::testing::random_formula(rng, 6, reg);
    std::string text = to_string(f);
    Formula g = parse_formula(text, fixed, reg);
    if (f.identical(g) && to_string(g) == text) ++ok;
  }
  return {ok == n, "formulas=" + str(n) + " round_trips=" + str(ok)};
}

}  // namespace

int main() {
  criterion(1, "kernel differential", 10, differential);
  criterion(2, "soundness round trip", 60, soundness);
  criterion(3, "completeness round trip", 0, completeness);
  criterion(4, "frame fuzz", 60, [] { return trials(false); });
  criterion(5, "fine-extension chains", 0, [] { return trials(true); });
  criterion(6, "PA regression corpus", 0, pa_corpus);
  criterion(7, "consistency transfer", 0, consistency);
  criterion(8, "parser fuzz", 5, parser);
  return failures;
}
