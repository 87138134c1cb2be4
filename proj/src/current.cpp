#include "rcd/current.hpp"

#include <algorithm>
#include <queue>

namespace rcd {

SourceSet::SourceSet(std::vector<int> vertices) : vertices_(std::move(vertices)) {
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
    throw std::invalid_argument("source set has a repeated vertex");
  if (vertices_.size() % 2 != 0) throw std::invalid_argument("source set must have even cardinality");
}

bool SourceSet::contains(int v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

Current Current::empty(const EmbeddedGraph& g, SourceSet sources) {
  return Current{std::vector<EdgeState>(g.num_edges(), EdgeState::absent), std::move(sources)};
}

int Current::num_open() const {
  return static_cast<int>(std::count_if(edges.begin(), edges.end(), [](EdgeState s) { return s != EdgeState::absent; }));
}

std::vector<char> Current::odd_mask() const {
  std::vector<char> m(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) m[e] = edges[e] == EdgeState::odd;
  return m;
}

bool is_valid_current(const EmbeddedGraph& g, const Current& w) {
  if (static_cast<int>(w.edges.size()) != g.num_edges()) return false;
  for (int v : w.sources.vertices())
    if (v < 0 || v >= g.num_vertices()) return false;
  std::vector<int> deg(g.num_vertices(), 0);
  for (int e = 0; e < g.num_edges(); ++e)
    if (w.is_odd(e)) {
      ++deg[g.origin(2 * e)];
      ++deg[g.origin(2 * e + 1)];
    }
  for (int v = 0; v < g.num_vertices(); ++v)
    if ((deg[v] % 2 == 1) != w.sources.contains(v)) return false;
  return true;
}

std::shared_ptr<const RadicalField> current_field(const EmbeddedGraph& g) {
  std::vector<Rational> rads;
  for (int e = 0; e < g.num_edges(); ++e) rads.push_back(1 - g.weight(e) * g.weight(e));
  return RadicalField::containing(rads);
}

QuadraticNumber edge_p(const EmbeddedGraph& g, int e, const std::shared_ptr<const RadicalField>& field) {
  const Rational& x = g.weight(e);
  return QuadraticNumber(field, Rational(1)) - QuadraticNumber::sqrt(field, 1 - x * x);
}

QuadraticNumber current_weight(const EmbeddedGraph& g, const Current& w,
                               const std::shared_ptr<const RadicalField>& field) {
  if (!is_valid_current(g, w)) throw std::invalid_argument("invalid current");
  QuadraticNumber out(field, Rational(1));
  Rational odd = 1;
  for (int e = 0; e < g.num_edges(); ++e) {
    switch (w.edges[e]) {
      case EdgeState::odd:
        odd *= g.weight(e);
        break;
      case EdgeState::even:
        out *= edge_p(g, e, field);
        break;
      case EdgeState::absent:
        out *= QuadraticNumber::sqrt(field, 1 - g.weight(e) * g.weight(e));
        break;
    }
  }
  return out * QuadraticNumber(field, odd);
}

QuadraticNumber current_weight(const EmbeddedGraph& g, const Current& w) {
  return current_weight(g, w, current_field(g));
}

Rational double_current_weight(const EmbeddedGraph& g, const Current& w) {
  if (!is_valid_current(g, w)) throw std::invalid_argument("invalid current");
  Rational out = 1;
  for (int e = 0; e < g.num_edges(); ++e) {
    const Rational& x = g.weight(e);
    switch (w.edges[e]) {
      case EdgeState::odd:
        out *= x;
        break;
      case EdgeState::even:
        out *= x * x;
        break;
      case EdgeState::absent:
        out *= 1 - x * x;
        break;
    }
  }
  const unsigned exponent = static_cast<unsigned>(w.num_open() + clusters(g, w).count);
  mpz_class two_pow;
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, exponent);
  out *= Rational(two_pow);
  return out;
}

Current sum_currents(const EmbeddedGraph& g, const Current& a, const Current& b) {
  if (static_cast<int>(a.edges.size()) != g.num_edges() || a.edges.size() != b.edges.size())
    throw std::invalid_argument("currents live on different graphs");
  if (!a.sources.empty() && !b.sources.empty())
    throw std::invalid_argument("adding two currents with nonempty sources is not supported");
  Current out;
  out.sources = a.sources.empty() ? b.sources : a.sources;
  out.edges.resize(a.edges.size());
  for (std::size_t e = 0; e < a.edges.size(); ++e) {
    const bool odd = a.is_odd(e) != b.is_odd(e);
    const bool open = a.is_open(e) || b.is_open(e);
    out.edges[e] = odd ? EdgeState::odd : (open ? EdgeState::even : EdgeState::absent);
  }
  return out;
}

ClusterDecomposition clusters_of_edges(const EmbeddedGraph& g, const std::vector<char>& open,
                                       const SourceSet& sources) {
  const int n = g.num_vertices();
  ClusterDecomposition cd;
  cd.label.assign(n, -1);
  std::vector<Shift> pos(n);
  for (int s = 0; s < n; ++s) {
    if (cd.label[s] >= 0) continue;
    const int c = cd.count++;
    cd.size.push_back(0);
    cd.touches_sources.push_back(0);
    cd.winds_x.push_back(0);
    cd.winds_y.push_back(0);
    std::queue<int> q;
    q.push(s);
    cd.label[s] = c;
    pos[s] = {};
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      ++cd.size[c];
      if (sources.contains(v)) cd.touches_sources[c] = 1;
      for (int h : g.rotation(v)) {
        if (!open[EmbeddedGraph::edge_of(h)]) continue;
        const int u = g.dest(h);
        Shift p = pos[v];
        p += g.shift(h);
        if (cd.label[u] < 0) {
          cd.label[u] = c;
          pos[u] = p;
          q.push(u);
        } else if (!(pos[u] == p)) {
          if (pos[u].dx != p.dx) cd.winds_x[c] = 1;
          if (pos[u].dy != p.dy) cd.winds_y[c] = 1;
        }
      }
    }
  }
  return cd;
}

ClusterDecomposition clusters(const EmbeddedGraph& g, const Current& w) {
  std::vector<char> open(w.edges.size());
  for (std::size_t e = 0; e < w.edges.size(); ++e) open[e] = w.is_open(e);
  return clusters_of_edges(g, open, w.sources);
}

std::vector<unsigned long> odd_sets(const EmbeddedGraph& g, const SourceSet& b, int cap) {
  const int m = g.num_edges();
  if (m > cap) throw std::length_error("graph has " + std::to_string(m) + " edges, enumeration cap is " + std::to_string(cap));
  unsigned long target_mask = 0;
  for (int v : b.vertices()) target_mask |= 1ul << v;
  const int n = g.num_vertices();
  if (n > 63) throw std::length_error("too many vertices for enumeration");
  std::vector<unsigned long> edge_parity(m);
  for (int e = 0; e < m; ++e) edge_parity[e] = (1ul << g.origin(2 * e)) ^ (1ul << g.origin(2 * e + 1));
  std::vector<unsigned long> out;
  for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
    unsigned long par = 0;
    for (int e = 0; e < m; ++e)
      if (mask >> e & 1) par ^= edge_parity[e];
    if (par == target_mask) out.push_back(mask);
  }
  return out;
}

void for_each_current(const EmbeddedGraph& g, const SourceSet& b, const std::function<void(const Current&)>& fn,
                      int cap) {
  const int m = g.num_edges();
  Current w = Current::empty(g, b);
  for (unsigned long odd : odd_sets(g, b, cap)) {
    const unsigned long rest = ((1ul << m) - 1) & ~odd;
    // Subsets of `rest` in increasing order.
    unsigned long even = 0;
    while (true) {
      for (int e = 0; e < m; ++e)
        w.edges[e] = (odd >> e & 1) ? EdgeState::odd : ((even >> e & 1) ? EdgeState::even : EdgeState::absent);
      fn(w);
      if (even == rest) break;
      even = (even - rest) & rest;
    }
  }
}

std::vector<Current> enumerate_currents(const EmbeddedGraph& g, const SourceSet& b, int cap) {
  std::vector<Current> out;
  for_each_current(g, b, [&](const Current& w) { out.push_back(w); }, cap);
  return out;
}

}  // namespace rcd
