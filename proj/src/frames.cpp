#include "intentic/frames.hpp"

#include <stdexcept>

namespace intentic {

Signature frame_signature(const GenParams& params) {
  Signature sig;
  for (const auto& r : params.relations) sig.add_relation(r, 1);
  for (const auto& c : params.constants) sig.add_constant(c);
  return sig;
}

Formula gen_atom(const GenParams& params, FrameRng& rng) {
  const auto& r = params.relations.at(rng.below(params.relations.size()));
  const auto& c = params.constants.at(rng.below(params.constants.size()));
  return Formula::atom(r, {Term::constant(c)});
}

Formula gen_hypothesis(const GenParams& params, FrameRng& rng) {
  auto roll = rng.below(100);
  if (roll < 60) return gen_atom(params, rng);
  if (roll < 75) return Formula::negation(gen_atom(params, rng));
  Formula a = gen_atom(params, rng);
  Formula b = gen_atom(params, rng);
  return roll < 90 ? Formula::conj(a, b) : Formula::disj(a, b);
}

namespace {

BasicState gen_base(const GenParams& params, FrameRng& rng) {
  std::vector<Formula> gens;
  auto n = rng.below(static_cast<std::size_t>(params.max_generators) + 1);
  for (std::size_t i = 0; i < n; ++i) gens.push_back(gen_atom(params, rng));
  return BasicState(std::move(gens));
}

// Connection proofs for a child whose generators come from the parent, the
// hypothesis, or the conjuncts of a conjunctive hypothesis.
std::vector<Proof> connect(const BasicState& parent, const Formula& hyp, const BasicState& child) {
  std::vector<Proof> out;
  for (const auto& g : child.generators()) {
    if (parent.contains(g) || g == hyp) {
      out.push_back(nd::assume(g));
    } else if (hyp.is(Connective::And) && g == hyp.lhs()) {
      out.push_back(nd::and_elim_left(nd::assume(hyp)));
    } else if (hyp.is(Connective::And) && g == hyp.rhs()) {
      out.push_back(nd::and_elim_right(nd::assume(hyp)));
    } else {
      throw std::logic_error("generator " + to_string(g) + " is not connectable");
    }
  }
  return out;
}

Edge gen_edge(const GenParams& params, FrameRng& rng, const BasicState& base, int depth) {
  Edge e;
  e.hypothesis = gen_hypothesis(params, rng);
  BasicState child_base;
  auto mode = rng.below(100);
  if (e.hypothesis.is(Connective::And) && mode < 50) {
    child_base = base.plus(e.hypothesis.lhs()).plus(e.hypothesis.rhs());
  } else if (mode < 70) {
    child_base = base.plus(e.hypothesis);
  } else if (mode < 85) {
    child_base = base;
  } else {
    child_base = base.plus(e.hypothesis);
    e.child = gen_state(params, rng, child_base, depth - 1);
    return e;  // structural
  }
  e.connection = connect(base, e.hypothesis, child_base);
  e.child = gen_state(params, rng, child_base, depth - 1);
  return e;
}

Path random_path(const StatePtr& u, FrameRng& rng, StatePtr& endpoint) {
  Path path;
  endpoint = u;
  while (!endpoint->children().empty() && rng.coin(50)) {
    auto i = rng.below(endpoint->children().size());
    path.push_back(i);
    endpoint = endpoint->children()[i].child;
  }
  return path;
}

}  // namespace

StatePtr gen_state(const GenParams& params, FrameRng& rng, const BasicState& base, int depth) {
  static const WitnessRegistry no_witnesses;
  std::vector<NewChild> kids;
  auto k = depth > 0 ? rng.below(static_cast<std::size_t>(params.max_branching) + 1) : 0;
  for (std::size_t i = 0; i < k; ++i) {
    Edge e = gen_edge(params, rng, base, depth);
    kids.push_back({e.hypothesis, e.child, e.connection});
  }
  return app(IntenticState::leaf(base), std::move(kids), no_witnesses);
}

StatePtr gen_state(const GenParams& params) {
  FrameRng rng(params.seed);
  return gen_state(params, rng, gen_base(params, rng), params.max_depth);
}

StatePtr gen_fine_extension(const StatePtr& u, const GenParams& params, FrameRng& rng, const WitnessRegistry& reg) {
  StatePtr end;
  Path path = random_path(u, rng, end);
  Edge e = gen_edge(params, rng, end->base(), 2);
  NewChild nc{e.hypothesis, e.child, e.connection};
  if (rng.coin(50)) return app(u, path, {nc}, reg);
  return rep(u, path, app(end, {nc}, reg));
}

MTWitness gen_witness(const IntenticState& u, const GenParams& params, FrameRng& rng, int depth) {
  MTWitness w;
  auto roll = rng.below(100);
  const auto& gens = u.base().generators();
  if (!gens.empty() && roll < 40) {
    w = base_witness(gens[rng.below(gens.size())]);
  } else if (!u.children().empty() && depth > 0 && roll < 80) {
    auto i = rng.below(u.children().size());
    const Edge& e = u.children()[i];
    ChildStep st;
    st.edge = i;
    st.antecedent = e.hypothesis;
    st.connection = e.connection;
    st.consequent = gen_witness(*e.child, params, rng, depth - 1);
    w.closing = nd::assume(st.implication());
    w.steps.push_back(std::move(st));
  } else {
    w.closing = nd::lem(gen_atom(params, rng));
  }
  if (depth > 0 && rng.coin(30)) {
    MTWitness other = gen_witness(u, params, rng, depth - 1);
    w.closing = nd::and_intro(std::move(w.closing), std::move(other.closing));
    for (auto& st : other.steps) w.steps.push_back(std::move(st));
  } else if (rng.coin(15)) {
    w.closing = nd::or_intro_left(std::move(w.closing), gen_atom(params, rng));
  }
  return w;
}

StatePtr local_join(const IntenticState& u, const IntenticState& v, const IntenticState& w) {
  check_fine_ext(u, v);
  check_fine_ext(u, w);
  std::vector<Edge> edges = v.children();
  edges.insert(edges.end(), w.children().begin(), w.children().end());
  return IntenticState::make(u.base(), std::move(edges));
}

// ---------------------------------------------------------------------------

Commutation::Commutation(const StatePtr& v, const StatePtr& w, const WitnessRegistry& reg,
                         std::optional<MTWitness> sigma_witness)
    : v_(v), w_(w) {
  const BasicState& bv = v->base();
  const BasicState& bw = w->base();
  StatePtr boosted = boost(w, bv);
  const auto& gens = boosted->base().generators();
  if (bw.empty()) {
    antecedent_ = nd::lem(Formula::falsum()).conclusion();
    for (const auto& g : gens) connection_.push_back(nd::assume(g));
  } else {
    antecedent_ = bw.sigma();
    const auto& wg = bw.generators();
    for (const auto& g : gens) {
      if (bv.contains(g)) {
        connection_.push_back(nd::assume(g));
        continue;
      }
      std::size_t j = 0;
      while (j < wg.size() && wg[j] != g) ++j;
      connection_.push_back(project_generator(bw, j));
    }
  }
  s_ = app(v, {NewChild{antecedent_, boosted, connection_}}, reg);
  long idx = s_->find_child(antecedent_, boosted->key());
  if (idx < 0) throw std::logic_error("commutation edge missing after app");
  edge_ = static_cast<std::size_t>(idx);
  cert_ = check_fine_ext(*v, *s_);
  if (bw.empty()) {
    sigma_in_s_.closing = nd::lem(Formula::falsum());
  } else if (sigma_witness) {
    check_mt_witness(*v, antecedent_, *sigma_witness, reg);
    sigma_in_s_ = transport_fine(*sigma_witness, cert_);
  } else {
    if (!bw.subset_of(bv))
      throw std::invalid_argument("sigma of b(w) needs a witness in v unless b(w) is contained in b(v)");
    sigma_in_s_.closing = assemble_sigma(bw);
  }
}

MTWitness Commutation::transport(const MTWitness& w_phi) const {
  MTWitness out = sigma_in_s_;
  ChildStep st;
  st.edge = edge_;
  st.antecedent = antecedent_;
  st.connection = connection_;
  st.consequent = transport_boost(*w_, w_phi, v_->base());
  out.closing = nd::imp_elim(nd::assume(st.implication()), sigma_in_s_.closing);
  out.steps.push_back(std::move(st));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct TrialFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw TrialFailure(what);
}

template <class F>
void stage(const char* name, F&& f) {
  try {
    f();
  } catch (const TrialFailure& e) {
    throw TrialFailure(std::string(name) + ": " + e.what());
  } catch (const Rejected& r) {
    throw TrialFailure(std::string(name) + ": " + r.path() + ": " + r.reason());
  } catch (const std::exception& e) {
    throw TrialFailure(std::string(name) + ": " + e.what());
  }
}

void check_witnesses(const IntenticState& from, const std::vector<std::pair<const IntenticState*, FineCert>>& targets,
                     const GenParams& params, FrameRng& rng, const WitnessRegistry& reg, int count) {
  for (int k = 0; k < count; ++k) {
    MTWitness w = gen_witness(from, params, rng, params.max_depth);
    check_mt_witness(from, w.formula(), w, reg);
    for (const auto& [to, cert] : targets) check_mt_witness(*to, w.formula(), transport_fine(w, cert), reg);
  }
}

}  // namespace

TrialReport frame_trial(std::uint64_t seed, const GenParams& params, const WitnessRegistry& reg) {
  TrialReport rep;
  FrameRng rng(seed);
  try {
    StatePtr u = gen_state(params, rng, gen_base(params, rng), params.max_depth);
    rep.u = u;
    StatePtr v = gen_fine_extension(u, params, rng, reg);
    if (rng.coin(50)) v = gen_fine_extension(v, params, rng, reg);
    StatePtr w = gen_fine_extension(u, params, rng, reg);
    rep.v = v;
    rep.w = w;

    stage("validate", [&] {
      validate(*u, reg);
      validate(*v, reg);
      validate(*w, reg);
    });
    stage("reflexivity", [&] {
      check_fine_ext(*u, *u);
      verify_fine_cert(*u, *u, identity_cert(*u));
    });
    FineCert uv, uw, vx;
    StatePtr x;
    stage("extension", [&] {
      uv = check_fine_ext(*u, *v);
      uw = check_fine_ext(*u, *w);
      verify_fine_cert(*u, *v, uv);
      expect(u->base() == v->base(), "fine extension changed the base");
    });
    stage("transitivity", [&] {
      x = gen_fine_extension(v, params, rng, reg);
      vx = check_fine_ext(*v, *x);
      verify_fine_cert(*u, *x, compose(uv, vx));
      expect(is_fine_ext(*u, *x), "search disagrees with composed certificate");
    });
    stage("monotonicity", [&] {
      check_witnesses(*u, {{v.get(), uv}, {w.get(), uw}, {x.get(), compose(uv, vx)}}, params, rng, reg, 3);
    });
    stage("local join", [&] {
      StatePtr j = local_join(*u, *v, *w);
      validate(*j, reg);
      FineCert vj = check_fine_ext(*v, *j);
      FineCert wj = check_fine_ext(*w, *j);
      check_fine_ext(*u, *j);
      check_witnesses(*v, {{j.get(), vj}}, params, rng, reg, 2);
      check_witnesses(*w, {{j.get(), wj}}, params, rng, reg, 2);
    });
    stage("commutation", [&] {
      // A second state over a sub-base of b(v), not related to u.
      std::vector<Formula> sub;
      for (const auto& g : v->base().generators())
        if (rng.coin(60)) sub.push_back(g);
      StatePtr w2 = gen_state(params, rng, BasicState(sub), params.max_depth - 1);
      for (const StatePtr& target : {w, w2}) {
        Commutation c(v, target, reg);
        validate(*c.state(), reg);
        check_fine_ext(*v, *c.state());
        for (int k = 0; k < 3; ++k) {
          MTWitness wp = gen_witness(*target, params, rng, params.max_depth);
          check_mt_witness(*target, wp.formula(), wp, reg);
          check_mt_witness(*c.state(), wp.formula(), c.transport(wp), reg);
        }
      }
    });
    stage("boost", [&] {
      BasicState c = gen_base(params, rng);
      StatePtr b = boost(w, c);
      validate(*b, reg);
      expect(b->base() == w->base().unite(c), "boosted base is not the union");
      MTWitness wp = gen_witness(*w, params, rng, params.max_depth);
      check_mt_witness(*b, wp.formula(), transport_boost(*w, wp, c), reg);
    });
  } catch (const TrialFailure& e) {
    rep.ok = false;
    rep.failure = e.what();
  } catch (const std::exception& e) {
    rep.ok = false;
    rep.failure = std::string("generation: ") + e.what();
  }
  return rep;
}

TrialReport chain_trial(std::uint64_t seed, const GenParams& params, const WitnessRegistry& reg, int length) {
  TrialReport rep;
  FrameRng rng(seed);
  try {
    std::vector<StatePtr> chain{gen_state(params, rng, gen_base(params, rng), params.max_depth)};
    for (int i = 0; i < length; ++i) chain.push_back(gen_fine_extension(chain.back(), params, rng, reg));
    rep.u = chain.front();
    rep.v = chain.back();
    stage("chain", [&] {
      FineCert acc = identity_cert(*chain.front());
      std::vector<MTWitness> ws;
      for (int k = 0; k < 3; ++k) ws.push_back(gen_witness(*chain.front(), params, rng, params.max_depth));
      for (std::size_t i = 1; i < chain.size(); ++i) {
        validate(*chain[i], reg);
        FineCert step = check_fine_ext(*chain[i - 1], *chain[i]);
        acc = compose(acc, step);
        verify_fine_cert(*chain.front(), *chain[i], acc);
        for (auto& w : ws) {
          w = transport_fine(w, step);
          check_mt_witness(*chain[i], w.formula(), w, reg);
        }
      }
    });
  } catch (const TrialFailure& e) {
    rep.ok = false;
    rep.failure = e.what();
  } catch (const std::exception& e) {
    rep.ok = false;
    rep.failure = std::string("generation: ") + e.what();
  }
  return rep;
}

std::string FuzzSummary::line() const {
  return "trials=" + std::to_string(trials) + " pass=" + std::to_string(pass) + " fail=" + std::to_string(fail);
}

FuzzSummary fuzz_frames(std::uint64_t seed, std::size_t count, const GenParams& params, const WitnessRegistry& reg) {
  FuzzSummary out;
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t s = seed + i;
    TrialReport r = i % 2 == 0 ? frame_trial(s, params, reg) : chain_trial(s, params, reg);
    ++out.trials;
    if (r.ok) {
      ++out.pass;
    } else {
      ++out.fail;
      out.failures.push_back(std::to_string(s) + ": " + r.failure);
    }
  }
  return out;
}

}  // namespace intentic
