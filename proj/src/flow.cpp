#include "rcd/flow.hpp"

#include <bit>
#include <utility>

namespace rcd {

namespace {

constexpr unsigned char kClassMask[2][2] = {
    {0b011, 0b110},  // even: {s1, m}, {m, s2}
    {0b010, 0b001},  // odd: {m}, and {s1} standing for its class
};

bool strand_out(const DirectedGraphTriple& t, int h, int d) { return (h & 1) == t.edges[d].tail_side; }

bool alternates_at(const DirectedGraphTriple& t, const AlternatingFlow& f, int z) {
  bool first = true, first_out = false, prev_out = false;
  for (const auto& end : t.ends[z]) {
    if (!f.has(end.edge)) continue;
    if (first) {
      first_out = end.out;
      first = false;
    } else if (end.out == prev_out) {
      return false;
    }
    prev_out = end.out;
  }
  return first || prev_out != first_out;
}

std::pair<bool, bool> signature(const DirectedGraphTriple& t, int h, unsigned char mask) {
  auto strands = t.strands_at(h);
  int first = -1, last = -1;
  for (int d : strands) {
    int k = static_cast<int>(t.edges[d].role);
    if (k < 3 && !(mask >> k & 1)) continue;
    if (first < 0) first = d;
    last = d;
  }
  return {strand_out(t, h, first), strand_out(t, h, last)};
}

void check_sources(const DirectedGraphTriple& t, const Current& w) {
  SourceSet expected = t.dobrushin ? SourceSet::pair(t.dobrushin->first, t.dobrushin->second) : SourceSet{};
  if (!(w.sources == expected)) throw std::invalid_argument("current sources do not match the flow boundary");
  if (!is_valid_current(t.base, w)) throw std::invalid_argument("invalid current");
}

}  // namespace

AlternatingFlow AlternatingFlow::empty(const DirectedGraphTriple& t) {
  AlternatingFlow f;
  f.mask.assign(t.base.num_edges(), 0);
  f.boundary = t.dobrushin.has_value();
  return f;
}

bool AlternatingFlow::has(int d) const {
  const int e = d / 3;
  if (e == static_cast<int>(mask.size())) return boundary;
  return mask[e] >> (d % 3) & 1;
}

bool is_alternating(const DirectedGraphTriple& t, const AlternatingFlow& f) {
  if (static_cast<int>(f.mask.size()) != t.base.num_edges()) return false;
  if (t.dobrushin.has_value() != f.boundary) return false;
  for (int z = 0; z < t.carrier.num_vertices(); ++z)
    if (!alternates_at(t, f, z)) return false;
  return true;
}

std::vector<int> isolated_vertices(const DirectedGraphTriple& t, const AlternatingFlow& f) {
  std::vector<int> out;
  for (int z = 0; z < t.carrier.num_vertices(); ++z) {
    bool any = false;
    for (const auto& end : t.ends[z]) any = any || f.has(end.edge);
    if (!any) out.push_back(z);
  }
  return out;
}

Rational flow_weight(const DirectedGraphTriple& t, const AlternatingFlow& f) {
  if (!is_alternating(t, f)) throw std::invalid_argument("flow is not alternating");
  Rational out = 1;
  for (std::size_t d = 0; d < t.edges.size(); ++d)
    if (f.has(static_cast<int>(d))) out *= t.edges[d].weight;
  mpz_class two_pow;
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, isolated_vertices(t, f).size());
  return out * Rational(two_pow);
}

Current theta(const DirectedGraphTriple& t, const AlternatingFlow& f) {
  Current w = Current::empty(t.base);
  if (t.dobrushin) w.sources = SourceSet::pair(t.dobrushin->first, t.dobrushin->second);
  for (int e = 0; e < t.base.num_edges(); ++e) {
    const int c = std::popcount(static_cast<unsigned>(f.mask[e]));
    w.edges[e] = (c % 2 == 1) ? EdgeState::odd : (c == 2 ? EdgeState::even : EdgeState::absent);
  }
  return w;
}

void for_each_flow(const DirectedGraphTriple& t, const std::function<void(const AlternatingFlow&)>& fn, int cap) {
  const int m = t.base.num_edges();
  if (m > cap) throw std::length_error("graph has " + std::to_string(m) + " edges, enumeration cap is " + std::to_string(cap));
  const int n = t.carrier.num_vertices();
  // Vertices whose incident base edges are all assigned after edge e.
  std::vector<std::vector<int>> complete_after(m + 1);
  for (int z = 0; z < n; ++z) {
    int last = -1;
    for (int h : t.carrier.rotation(z)) {
      int e = EmbeddedGraph::edge_of(h);
      if (e < m) last = std::max(last, e);
    }
    complete_after[last + 1].push_back(z);
  }
  AlternatingFlow f = AlternatingFlow::empty(t);
  for (int z : complete_after[0])
    if (!alternates_at(t, f, z)) return;
  std::function<void(int)> rec = [&](int e) {
    if (e == m) {
      fn(f);
      return;
    }
    for (unsigned char mask = 0; mask < 8; ++mask) {
      f.mask[e] = mask;
      bool ok = true;
      for (int z : complete_after[e + 1])
        if (!alternates_at(t, f, z)) {
          ok = false;
          break;
        }
      if (ok) rec(e + 1);
    }
    f.mask[e] = 0;
  };
  rec(0);
}

std::vector<AlternatingFlow> enumerate_flows(const DirectedGraphTriple& t, int cap) {
  std::vector<AlternatingFlow> out;
  for_each_flow(t, [&](const AlternatingFlow& f) { out.push_back(f); }, cap);
  return out;
}

ClusterOrientation orient_clusters(const DirectedGraphTriple& t, const Current& w, const std::vector<int>& xi) {
  check_sources(t, w);
  const EmbeddedGraph& c = t.carrier;
  const int m = t.base.num_edges();
  ClusterOrientation co;
  co.clusters = clusters(t.base, w);
  const int k = co.clusters.count;
  co.root_edge.assign(k, -1);
  co.fixed.assign(k, 0);
  co.edge_class.assign(m, -1);
  for (int e = m - 1; e >= 0; --e)
    if (w.is_open(e)) co.root_edge[co.clusters.label[t.base.origin(2 * e)]] = e;

  std::vector<int> queue;
  std::vector<char> known(m, 0);
  if (t.dobrushin) {
    co.fixed[co.clusters.label[t.dobrushin->first]] = 1;
    queue.push_back(t.dobrushin->first);
    queue.push_back(t.dobrushin->second);
  }
  for (int cl = 0; cl < k; ++cl) {
    const int e = co.root_edge[cl];
    if (e < 0 || co.fixed[cl]) continue;
    const int sign = cl < static_cast<int>(xi.size()) ? xi[cl] : 1;
    co.edge_class[e] = sign >= 0 ? 0 : 1;
    known[e] = 1;
    queue.push_back(t.base.origin(2 * e));
    queue.push_back(t.base.origin(2 * e + 1));
  }

  auto block_mask = [&](int e, int cls) { return kClassMask[w.is_odd(e) ? 1 : 0][cls]; };
  while (!queue.empty()) {
    const int z = queue.back();
    queue.pop_back();
    std::vector<int> blocks;
    for (int h : c.rotation(z)) {
      int e = EmbeddedGraph::edge_of(h);
      if (e == m || w.is_open(e)) blocks.push_back(h);
    }
    const int nb = static_cast<int>(blocks.size());
    int start = -1;
    for (int i = 0; i < nb && start < 0; ++i) {
      int e = EmbeddedGraph::edge_of(blocks[i]);
      if (e == m || known[e]) start = i;
    }
    if (start < 0) continue;
    auto sig = [&](int h) {
      int e = EmbeddedGraph::edge_of(h);
      return signature(t, h, e == m ? 0 : block_mask(e, co.edge_class[e]));
    };
    const auto first = sig(blocks[start]);
    bool last_out = first.second;
    for (int s = 1; s < nb; ++s) {
      const int h = blocks[(start + s) % nb];
      const int e = EmbeddedGraph::edge_of(h);
      if (e == m) {
        auto b = sig(h);
        if (b.first == last_out) throw GraphError("cluster orientation conflicts with e_(a,b)");
        last_out = b.second;
        continue;
      }
      int cls = -1;
      for (int candidate = 0; candidate < 2; ++candidate)
        if (signature(t, h, block_mask(e, candidate)).first != last_out) cls = candidate;
      if (known[e] && co.edge_class[e] != cls)
        throw GraphError("inconsistent cluster orientation at vertex " + std::to_string(z));
      if (!known[e]) {
        known[e] = 1;
        co.edge_class[e] = cls;
        queue.push_back(c.dest(h));
      }
      last_out = signature(t, h, block_mask(e, cls)).second;
    }
    if (last_out == first.first) throw GraphError("orientation does not close around vertex " + std::to_string(z));
  }
  for (int e = 0; e < m; ++e)
    if (w.is_open(e) && !known[e]) throw GraphError("orientation propagation missed an edge");
  return co;
}

namespace {

std::vector<int> orientation_vector(const ClusterOrientation& co) {
  std::vector<int> xi(co.clusters.count, 0);
  for (int cl = 0; cl < co.clusters.count; ++cl) {
    const int e = co.root_edge[cl];
    if (e >= 0) xi[cl] = co.edge_class[e] == 0 ? 1 : -1;
  }
  return xi;
}

}  // namespace

std::vector<FiberElement> theta_fiber(const DirectedGraphTriple& t, const Current& w) {
  check_sources(t, w);
  const int m = t.base.num_edges();
  auto cd = clusters(t.base, w);
  std::vector<int> free_clusters;
  std::vector<char> has_edge(cd.count, 0);
  for (int e = 0; e < m; ++e)
    if (w.is_open(e)) has_edge[cd.label[t.base.origin(2 * e)]] = 1;
  const int fixed_cluster = t.dobrushin ? cd.label[t.dobrushin->first] : -1;
  for (int cl = 0; cl < cd.count; ++cl)
    if (has_edge[cl] && cl != fixed_cluster) free_clusters.push_back(cl);

  std::vector<FiberElement> out;
  const int nf = static_cast<int>(free_clusters.size());
  for (unsigned long bits = 0; bits < (1ul << nf); ++bits) {
    std::vector<int> xi(cd.count, 1);
    for (int i = 0; i < nf; ++i)
      if (bits >> i & 1) xi[free_clusters[i]] = -1;
    ClusterOrientation co;
    try {
      co = orient_clusters(t, w, xi);
    } catch (const GraphError&) {
      // A winding cluster on the torus may admit no orientation at all.
      if (t.base.topology() == Topology::torus) return {};
      throw;
    }
    const auto xi_out = orientation_vector(co);
    AlternatingFlow f = AlternatingFlow::empty(t);
    std::vector<int> branching;
    for (int e = 0; e < m; ++e) {
      if (!w.is_open(e)) continue;
      f.mask[e] = kClassMask[w.is_odd(e) ? 1 : 0][co.edge_class[e]];
      if (w.is_odd(e) && co.edge_class[e] == 1) branching.push_back(e);
    }
    long combos = 1;
    for (std::size_t i = 0; i < branching.size(); ++i) combos *= 3;
    for (long code = 0; code < combos; ++code) {
      long c = code;
      for (int e : branching) {
        static constexpr unsigned char kType2[3] = {0b001, 0b100, 0b111};
        f.mask[e] = kType2[c % 3];
        c /= 3;
      }
      out.push_back({f, xi_out});
    }
  }
  return out;
}

AlternatingFlow sample_flow_given_current(const DirectedGraphTriple& t, const Current& w, std::mt19937_64& rng) {
  const int m = t.base.num_edges();
  auto cd = clusters(t.base, w);
  std::bernoulli_distribution coin(0.5);
  std::vector<int> xi(cd.count);
  for (auto& s : xi) s = coin(rng) ? 1 : -1;
  auto co = orient_clusters(t, w, xi);
  AlternatingFlow f = AlternatingFlow::empty(t);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int e = 0; e < m; ++e) {
    if (!w.is_open(e)) continue;
    f.mask[e] = kClassMask[w.is_odd(e) ? 1 : 0][co.edge_class[e]];
    if (w.is_odd(e) && co.edge_class[e] == 1) {
      const double x = to_double(t.base.weight(e));
      const double u = unit(rng);
      const double side = (1.0 - x * x) / 2.0;
      f.mask[e] = u < side ? 0b001 : (u < 2.0 * side ? 0b100 : 0b111);
    }
  }
  return f;
}

}  // namespace rcd
