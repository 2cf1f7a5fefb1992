#include "intentic/states.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace intentic {

std::vector<Formula> canonicalize(std::vector<Formula> gens) {
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return gens;
}

BasicState::BasicState(std::vector<Formula> generators) : gens_(canonicalize(std::move(generators))) {}

bool BasicState::contains(const Formula& f) const { return std::binary_search(gens_.begin(), gens_.end(), f); }

bool BasicState::subset_of(const BasicState& other) const {
  return std::includes(other.gens_.begin(), other.gens_.end(), gens_.begin(), gens_.end());
}

Formula BasicState::sigma() const {
  if (gens_.empty()) return Formula::implies(Formula::falsum(), Formula::falsum());
  Formula acc = gens_.back();
  for (std::size_t i = gens_.size() - 1; i-- > 0;) acc = Formula::conj(gens_[i], acc);
  return acc;
}

BasicState BasicState::plus(const Formula& f) const {
  auto g = gens_;
  g.push_back(f);
  return BasicState(std::move(g));
}

BasicState BasicState::unite(const BasicState& other) const {
  auto g = gens_;
  g.insert(g.end(), other.gens_.begin(), other.gens_.end());
  return BasicState(std::move(g));
}

Proof project_generator(const BasicState& b, std::size_t j) {
  const auto& g = b.generators();
  if (j >= g.size()) throw std::out_of_range("generator index");
  Proof p = nd::assume(b.sigma());
  for (std::size_t i = 0; i < j; ++i) p = nd::and_elim_right(std::move(p));
  if (j + 1 < g.size()) p = nd::and_elim_left(std::move(p));
  return p;
}

Proof assemble_sigma(const BasicState& b) {
  const auto& g = b.generators();
  if (g.empty()) throw std::invalid_argument("sigma of the empty basic state is not derivable");
  Proof acc = nd::assume(g.back());
  for (std::size_t i = g.size() - 1; i-- > 0;) acc = nd::and_intro(nd::assume(g[i]), std::move(acc));
  return acc;
}

// ---------------------------------------------------------------------------

namespace {

std::string edge_key(const Edge& e) { return e.hypothesis.key() + ";" + e.child->key(); }

}  // namespace

IntenticState::IntenticState(BasicState base, std::vector<Edge> children)
    : base_(std::move(base)), children_(std::move(children)) {
  for (const auto& e : children_)
    if (!e.child) throw std::invalid_argument("edge without child state");
  std::vector<std::pair<std::string, Edge>> keyed;
  keyed.reserve(children_.size());
  for (auto& e : children_) keyed.emplace_back(edge_key(e), std::move(e));
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
              keyed.end());
  children_.clear();
  key_ = "B[";
  for (std::size_t i = 0; i < base_.generators().size(); ++i) {
    if (i) key_ += ',';
    key_ += base_.generators()[i].key();
  }
  key_ += "]H[";
  for (auto& [k, e] : keyed) {
    key_ += '(';
    key_ += k;
    key_ += ')';
    children_.push_back(std::move(e));
  }
  key_ += ']';
}

StatePtr IntenticState::leaf(BasicState base) { return std::make_shared<const IntenticState>(std::move(base), std::vector<Edge>{}); }

StatePtr IntenticState::make(BasicState base, std::vector<Edge> children) {
  return std::make_shared<const IntenticState>(std::move(base), std::move(children));
}

std::size_t IntenticState::depth() const {
  std::size_t d = 0;
  for (const auto& e : children_) d = std::max(d, e.child->depth() + 1);
  return d;
}

std::size_t IntenticState::node_count() const {
  std::size_t n = 1;
  for (const auto& e : children_) n += e.child->node_count();
  return n;
}

long IntenticState::find_child(const Formula& hypothesis, const std::string& child_key) const {
  for (std::size_t i = 0; i < children_.size(); ++i)
    if (children_[i].hypothesis == hypothesis && children_[i].child->key() == child_key) return static_cast<long>(i);
  return -1;
}

const IntenticState& follow(const IntenticState& u, const Path& path) {
  const IntenticState* cur = &u;
  for (auto i : path) {
    if (i >= cur->children().size()) throw std::out_of_range("path index " + std::to_string(i) + " out of range");
    cur = cur->children()[i].child.get();
  }
  return *cur;
}

std::vector<Formula> connectors(const IntenticState& u, const Path& path) {
  std::vector<Formula> out;
  const IntenticState* cur = &u;
  for (auto i : path) {
    if (i >= cur->children().size()) throw std::out_of_range("path index " + std::to_string(i) + " out of range");
    out.push_back(cur->children()[i].hypothesis);
    cur = cur->children()[i].child.get();
  }
  return out;
}

void check_edge(const BasicState& parent, const Edge& e, const WitnessRegistry& reg, const std::string& path) {
  if (!e.child) throw Rejected(path, "edge has no child state");
  const auto& gens = e.child->base().generators();
  if (e.connection.empty()) {
    // A child without generators needs no connection proofs either way.
    if (gens.empty()) return;
    if (!(e.child->base() == parent.plus(e.hypothesis)))
      throw Rejected(path, "child generators are not the parent generators plus " + to_string(e.hypothesis));
    return;
  }
  if (e.connection.size() != gens.size())
    throw Rejected(path, "expected " + std::to_string(gens.size()) + " connection proofs, got " +
                             std::to_string(e.connection.size()));
  for (std::size_t j = 0; j < gens.size(); ++j) {
    std::string at = path + ".connection." + std::to_string(j);
    Judgment jd;
    try {
      jd = check_proof(e.connection[j], Logic::NonHypothetical, reg);
    } catch (const Rejected& r) {
      throw Rejected(at + "/" + r.path(), r.reason());
    }
    if (jd.conclusion != gens[j])
      throw Rejected(at, "proves " + to_string(jd.conclusion) + ", expected " + to_string(gens[j]));
    for (const auto& a : jd.open_assumptions)
      if (!parent.contains(a) && a != e.hypothesis)
        throw Rejected(at, "open assumption " + to_string(a) + " is neither a parent generator nor the hypothesis");
  }
}

namespace {

void validate_at(const IntenticState& u, const WitnessRegistry& reg, const std::string& path) {
  for (std::size_t i = 0; i < u.children().size(); ++i) {
    std::string at = path + "." + std::to_string(i);
    check_edge(u.base(), u.children()[i], reg, at);
    validate_at(*u.children()[i].child, reg, at);
  }
}

class FineSearch {
 public:
  std::optional<FineCert> run(const IntenticState& u, const IntenticState& v, const std::string& path,
                              std::string* failure) {
    auto memo_key = std::make_pair(static_cast<const void*>(&u), static_cast<const void*>(&v));
    if (auto it = memo_.find(memo_key); it != memo_.end()) {
      if (!it->second && failure && failure->empty()) *failure = path + ": no matching child";
      return it->second;
    }
    std::optional<FineCert> out = search(u, v, path, failure);
    memo_.emplace(memo_key, out);
    return out;
  }

 private:
  std::optional<FineCert> search(const IntenticState& u, const IntenticState& v, const std::string& path,
                                 std::string* failure) {
    if (!(u.base() == v.base())) {
      if (failure && failure->empty()) *failure = path + ": bases differ";
      return std::nullopt;
    }
    FineCert cert;
    for (std::size_t i = 0; i < u.children().size(); ++i) {
      const IntenticState& s = *u.children()[i].child;
      bool found = false;
      for (std::size_t j = 0; j < v.children().size() && !found; ++j) {
        if (auto sub = run(s, *v.children()[j].child, path + "." + std::to_string(i), nullptr)) {
          cert.matches.push_back({j, std::move(*sub)});
          found = true;
        }
      }
      if (!found) {
        if (failure && failure->empty())
          *failure = path + "." + std::to_string(i) + ": no child of the extension fine-extends it";
        return std::nullopt;
      }
    }
    return cert;
  }

  std::map<std::pair<const void*, const void*>, std::optional<FineCert>> memo_;
};

void verify_cert_at(const IntenticState& u, const IntenticState& v, const FineCert& cert, const std::string& path) {
  if (!(u.base() == v.base())) throw Rejected(path, "bases differ");
  if (cert.matches.size() != u.children().size())
    throw Rejected(path, "certificate has " + std::to_string(cert.matches.size()) + " matches for " +
                             std::to_string(u.children().size()) + " children");
  for (std::size_t i = 0; i < cert.matches.size(); ++i) {
    const auto& m = cert.matches[i];
    if (m.target >= v.children().size())
      throw Rejected(path + "." + std::to_string(i), "target index " + std::to_string(m.target) + " out of range");
    verify_cert_at(*u.children()[i].child, *v.children()[m.target].child, m.sub, path + "." + std::to_string(i));
  }
}

}  // namespace

void validate(const IntenticState& u, const WitnessRegistry& reg) { validate_at(u, reg, "root"); }

FineCert identity_cert(const IntenticState& u) {
  FineCert c;
  for (std::size_t i = 0; i < u.children().size(); ++i) c.matches.push_back({i, identity_cert(*u.children()[i].child)});
  return c;
}

FineCert check_fine_ext(const IntenticState& u, const IntenticState& v) {
  FineSearch search;
  std::string failure;
  auto cert = search.run(u, v, "root", &failure);
  if (!cert) {
    auto colon = failure.find(": ");
    throw Rejected(failure.substr(0, colon), colon == std::string::npos ? "not a fine extension" : failure.substr(colon + 2));
  }
  return *cert;
}

bool is_fine_ext(const IntenticState& u, const IntenticState& v) {
  FineSearch search;
  return search.run(u, v, "root", nullptr).has_value();
}

void verify_fine_cert(const IntenticState& u, const IntenticState& v, const FineCert& cert) {
  verify_cert_at(u, v, cert, "root");
}

FineCert compose(const FineCert& uv, const FineCert& vw) {
  FineCert out;
  for (const auto& m : uv.matches) {
    const auto& next = vw.matches.at(m.target);
    out.matches.push_back({next.target, compose(m.sub, next.sub)});
  }
  return out;
}

// ---------------------------------------------------------------------------

StatePtr rep(const StatePtr& u, const Path& path, const StatePtr& replacement) {
  if (path.empty()) {
    check_fine_ext(*u, *replacement);
    return replacement;
  }
  if (path.front() >= u->children().size()) throw std::out_of_range("path index out of range");
  std::vector<Edge> edges = u->children();
  Edge& e = edges[path.front()];
  e.child = rep(e.child, Path(path.begin() + 1, path.end()), replacement);
  return IntenticState::make(u->base(), std::move(edges));
}

StatePtr app(const StatePtr& u, std::vector<NewChild> children, const WitnessRegistry& reg) {
  std::vector<Edge> edges = u->children();
  for (std::size_t i = 0; i < children.size(); ++i) {
    Edge e{std::move(children[i].hypothesis), std::move(children[i].child), std::move(children[i].connection)};
    check_edge(u->base(), e, reg, "new." + std::to_string(i));
    edges.push_back(std::move(e));
  }
  return IntenticState::make(u->base(), std::move(edges));
}

StatePtr app(const StatePtr& u, const Path& path, std::vector<NewChild> children, const WitnessRegistry& reg) {
  StatePtr target = u;
  for (auto i : path) {
    if (i >= target->children().size()) throw std::out_of_range("path index out of range");
    target = target->children()[i].child;
  }
  return rep(u, path, app(target, std::move(children), reg));
}

std::vector<Proof> boost_connection(const Edge& e, const BasicState& c, const BasicState& boosted_child) {
  const auto& old = e.child->base().generators();
  if (e.connection.empty() && !old.empty()) return {};
  std::vector<Proof> out;
  for (const auto& g : boosted_child.generators()) {
    auto it = std::lower_bound(old.begin(), old.end(), g);
    if (it != old.end() && *it == g) {
      out.push_back(e.connection[static_cast<std::size_t>(it - old.begin())]);
    } else {
      if (!c.contains(g)) throw std::logic_error("boosted generator from neither source");
      out.push_back(nd::assume(g));
    }
  }
  return out;
}

StatePtr boost(const StatePtr& u, const BasicState& c) {
  if (c.empty()) return u;
  std::vector<Edge> edges;
  edges.reserve(u->children().size());
  for (const auto& e : u->children()) {
    StatePtr child = boost(e.child, c);
    edges.push_back({e.hypothesis, child, boost_connection(e, c, child->base())});
  }
  return IntenticState::make(u->base().unite(c), std::move(edges));
}

}  // namespace intentic
