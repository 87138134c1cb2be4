#include "rcd/worm.hpp"

#include <cmath>
#include <queue>

namespace rcd {

namespace {

std::vector<double> weights_as_double(const EmbeddedGraph& g) {
  std::vector<double> x(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) x[e] = to_double(g.weight(e));
  return x;
}

// Any odd set with boundary B: pair up the sources along BFS paths.
std::vector<char> initial_odd_set(const EmbeddedGraph& g, const SourceSet& b) {
  std::vector<char> odd(g.num_edges(), 0);
  const auto& s = b.vertices();
  for (std::size_t i = 0; i + 1 < s.size(); i += 2) {
    std::vector<int> via(g.num_vertices(), -1);
    std::vector<char> seen(g.num_vertices(), 0);
    std::queue<int> q;
    q.push(s[i]);
    seen[s[i]] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int h : g.rotation(v)) {
        int u = g.dest(h);
        if (seen[u]) continue;
        seen[u] = 1;
        via[u] = h;
        q.push(u);
      }
    }
    if (!seen[s[i + 1]]) throw GraphError("sources lie in different components");
    for (int v = s[i + 1]; v != s[i]; v = g.origin(via[v])) odd[EmbeddedGraph::edge_of(via[v])] ^= 1;
  }
  return odd;
}

}  // namespace

std::uint64_t chain_seed(std::uint64_t seed, std::uint64_t chain) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chain), static_cast<std::uint32_t>(chain >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

WormSampler::WormSampler(const EmbeddedGraph& g, SourceSet b, std::uint64_t seed)
    : WormSampler(g, std::move(b), weights_as_double(g), seed) {}

WormSampler::WormSampler(const EmbeddedGraph& g, SourceSet b, std::vector<double> x, std::uint64_t seed)
    : g_(&g), sources_(std::move(b)), x_(std::move(x)), rng_(seed) {
  if (static_cast<int>(x_.size()) != g.num_edges()) throw std::invalid_argument("weight vector size mismatch");
  if (g.num_edges() == 0) throw GraphError("worm sampler needs at least one edge");
  p_.resize(x_.size());
  for (std::size_t e = 0; e < x_.size(); ++e) {
    if (!(x_[e] > 0.0 && x_[e] < 1.0)) throw std::invalid_argument("worm weights must lie in (0, 1)");
    p_[e] = 1.0 - std::sqrt(1.0 - x_[e] * x_[e]);
  }
  odd_ = initial_odd_set(g, sources_);
  // Start the worm at a vertex with an incident edge.
  head_ = tail_ = g.origin(0);
}

void WormSampler::step() {
  ++steps_;
  const EmbeddedGraph& g = *g_;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (unit(rng_) < 0.5) {
    if (head_ != tail_) return;
    std::uniform_int_distribution<int> pick(0, g.num_vertices() - 1);
    int v = pick(rng_);
    if (g.degree(v) > 0) head_ = tail_ = v;
    return;
  }
  const int d = g.degree(head_);
  std::uniform_int_distribution<int> pick(0, d - 1);
  const int h = g.rotation(head_)[pick(rng_)];
  const int e = EmbeddedGraph::edge_of(h);
  const int next = g.dest(h);
  double ratio = odd_[e] ? 1.0 / x_[e] : x_[e];
  ratio *= static_cast<double>(d) / g.degree(next);
  if (ratio >= 1.0 || unit(rng_) < ratio) {
    odd_[e] ^= 1;
    head_ = next;
  }
}

void WormSampler::advance(long long visits) {
  for (long long i = 0; i < visits; ++i) {
    do step();
    while (head_ != tail_);
    ++visits_;
  }
}

void WormSampler::advance_sweeps(double sweeps) {
  const long long target = steps_ + static_cast<long long>(std::ceil(sweeps * g_->num_edges()));
  while (steps_ < target || head_ != tail_) {
    step();
    if (head_ == tail_) ++visits_;
  }
}

Current WormSampler::complete() {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Current w = Current::empty(*g_, sources_);
  for (int e = 0; e < g_->num_edges(); ++e) {
    if (odd_[e])
      w.edges[e] = EdgeState::odd;
    else if (unit(rng_) < p_[e])
      w.edges[e] = EdgeState::even;
  }
  return w;
}

Current WormSampler::sample(long long thin) {
  advance(thin > 0 ? thin : g_->num_edges());
  return complete();
}

Current sample_current_worm(const EmbeddedGraph& g, const SourceSet& b, long long sweeps, std::uint64_t seed) {
  WormSampler s(g, b, seed);
  s.advance(std::max(sweeps, 1LL) * g.num_edges());
  return s.complete();
}

}  // namespace rcd
