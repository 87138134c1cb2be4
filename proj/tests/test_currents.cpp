#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "rcd/current.hpp"
#include "rcd/lattice.hpp"
#include "rcd/worm.hpp"

namespace rcd {
namespace {

// Independent oracle: scan all 3^|E| labelings and keep those with the
// right parity.
std::vector<std::vector<EdgeState>> scan_currents(const EmbeddedGraph& g, const SourceSet& b) {
  const int m = g.num_edges();
  std::vector<std::vector<EdgeState>> out;
  long total = 1;
  for (int e = 0; e < m; ++e) total *= 3;
  for (long code = 0; code < total; ++code) {
    std::vector<EdgeState> s(m);
    long c = code;
    std::vector<int> deg(g.num_vertices(), 0);
    for (int e = 0; e < m; ++e, c /= 3) {
      s[e] = static_cast<EdgeState>(c % 3);
      if (s[e] == EdgeState::odd) {
        ++deg[g.origin(2 * e)];
        ++deg[g.origin(2 * e + 1)];
      }
    }
    bool ok = true;
    for (int v = 0; v < g.num_vertices(); ++v) ok = ok && ((deg[v] % 2 == 1) == b.contains(v));
    if (ok) out.push_back(s);
  }
  return out;
}

Current make(const EmbeddedGraph& g, std::vector<EdgeState> s, SourceSet b = {}) {
  (void)g;
  return Current{std::move(s), std::move(b)};
}

constexpr EdgeState O = EdgeState::odd, V = EdgeState::even, A = EdgeState::absent;

TEST(Currents, Validity) {
  auto g = single_edge(Rational(1, 2));
  EXPECT_TRUE(is_valid_current(g, make(g, {A})));
  EXPECT_TRUE(is_valid_current(g, make(g, {O}, SourceSet::pair(0, 1))));
  EXPECT_FALSE(is_valid_current(g, make(g, {O})));
  EXPECT_THROW(SourceSet({1}), std::invalid_argument);
}

TEST(Currents, SingleEdgeWeights) {
  auto g = single_edge(Rational(3, 5));
  auto field = current_field(g);
  EXPECT_EQ(current_weight(g, make(g, {A}), field).to_rational(), Rational(4, 5));
  EXPECT_EQ(current_weight(g, make(g, {V}), field).to_rational(), Rational(1, 5));
}

TEST(Currents, AllOddTriangle) {
  auto g = cycle_graph(3, std::vector<Rational>(3, Rational(1, 2)));
  EXPECT_EQ(current_weight(g, make(g, {O, O, O})).to_rational(), Rational(1, 8));
}

TEST(Currents, DoubleCurrentExamples) {
  auto g = cycle_graph(3, std::vector<Rational>(3, Rational(1, 2)));
  EXPECT_EQ(double_current_weight(g, make(g, {A, A, A})), Rational(27, 8));
  EXPECT_EQ(double_current_weight(g, make(g, {O, O, O})), Rational(2));
}

TEST(Currents, EnumerationMatchesParityScan) {
  for (const auto& name : {"edge", "p3", "c3", "c4", "bowtie", "k4", "torus2"}) {
    auto g = named_graph(name);
    for (const auto& b : {SourceSet{}, SourceSet::pair(0, 1)}) {
      auto list = enumerate_currents(g, b);
      auto oracle = scan_currents(g, b);
      ASSERT_EQ(list.size(), oracle.size()) << name;
      std::set<std::vector<EdgeState>> a, c(oracle.begin(), oracle.end());
      for (const auto& w : list) {
        EXPECT_TRUE(is_valid_current(g, w));
        a.insert(w.edges);
      }
      EXPECT_EQ(a, c) << name;
    }
  }
}

TEST(Currents, SmallEnumerationCounts) {
  auto e = single_edge(Rational(1, 2));
  EXPECT_EQ(enumerate_currents(e, {}).size(), 2u);
  EXPECT_EQ(enumerate_currents(e, SourceSet::pair(0, 1)).size(), 1u);
  // Odd part empty (2^3 even parts) or the whole triangle.
  EXPECT_EQ(enumerate_currents(named_graph("c3"), {}).size(), 9u);
}

TEST(Currents, EnumerationCap) {
  auto g = grid_graph(4, 4, mixed_weights(24));
  EXPECT_THROW(enumerate_currents(g, {}), std::length_error);
}

// Summing the single-current weights over the even parts leaves the
// high-temperature expansion sum over even subgraphs of prod x_e.
TEST(Currents, PartitionFunctionIsHighTemperatureSum) {
  for (const auto& name : {"c3", "c4", "bowtie", "k4", "torus2"}) {
    auto g = named_graph(name);
    auto field = current_field(g);
    QuadraticNumber z(field, Rational(0));
    for_each_current(g, {}, [&](const Current& w) { z += current_weight(g, w, field); });
    Rational ht = 0;
    for (unsigned long mask : odd_sets(g, {})) {
      Rational t = 1;
      for (int e = 0; e < g.num_edges(); ++e)
        if (mask >> e & 1) t *= g.weight(e);
      ht += t;
    }
    EXPECT_EQ(z.to_rational(), ht) << name;
  }
}

// Convolution oracle: P^B x P^0 pushed through current addition equals the
// normalized double-current weight.
void expect_convolution(const EmbeddedGraph& g, const SourceSet& b) {
  auto field = current_field(g);
  std::map<std::vector<EdgeState>, QuadraticNumber> conv;
  QuadraticNumber zb(field, Rational(0)), z0(field, Rational(0));
  auto with_b = enumerate_currents(g, b);
  auto without = enumerate_currents(g, {});
  std::vector<QuadraticNumber> wb, w0;
  for (const auto& w : with_b) {
    wb.push_back(current_weight(g, w, field));
    zb += wb.back();
  }
  for (const auto& w : without) {
    w0.push_back(current_weight(g, w, field));
    z0 += w0.back();
  }
  for (std::size_t i = 0; i < with_b.size(); ++i)
    for (std::size_t j = 0; j < without.size(); ++j) {
      auto s = sum_currents(g, with_b[i], without[j]);
      auto it = conv.find(s.edges);
      if (it == conv.end()) it = conv.emplace(s.edges, QuadraticNumber(field, Rational(0))).first;
      it->second += wb[i] * w0[j];
    }
  std::map<std::vector<EdgeState>, Rational> dbl;
  Rational total = 0;
  for (const auto& w : with_b) {
    dbl[w.edges] = double_current_weight(g, w);
    total += dbl[w.edges];
  }
  ASSERT_EQ(conv.size(), dbl.size());
  const QuadraticNumber zz = zb * z0;
  for (const auto& [cfg, c] : conv) {
    // c / (zb z0) == dbl / total, cross-multiplied.
    EXPECT_TRUE(c * QuadraticNumber(field, total) == zz * QuadraticNumber(field, dbl.at(cfg)));
    EXPECT_TRUE((c * QuadraticNumber(field, total)).is_rational());
  }
}

TEST(Currents, DoubleCurrentIsConvolution) {
  for (const auto& name : {"edge", "p3", "c3", "c4", "bowtie", "theta"}) {
    auto g = named_graph(name);
    expect_convolution(g, {});
    expect_convolution(g, SourceSet::pair(0, 1));
  }
}

TEST(Currents, SumIdentitiesAndMixing) {
  auto g = cycle_graph(3, mixed_weights(3));
  auto w = make(g, {O, V, A});
  w.sources = SourceSet::pair(0, 1);
  EXPECT_EQ(sum_currents(g, w, Current::empty(g)), w);
  auto odd = make(g, {O, O, O});
  auto s = sum_currents(g, odd, make(g, {A, A, A}));
  EXPECT_EQ(s.edges, odd.edges);
  auto t = sum_currents(g, odd, odd);
  EXPECT_EQ(t.edges, (std::vector<EdgeState>{V, V, V}));
  auto u = sum_currents(g, make(g, {O, O, O}), make(g, {V, A, V}));
  EXPECT_EQ(u.edges, (std::vector<EdgeState>{O, O, O}));
}

TEST(Clusters, Counts) {
  auto g = cycle_graph(3, mixed_weights(3));
  EXPECT_EQ(clusters(g, make(g, {A, A, A})).count, 3);
  EXPECT_EQ(clusters(g, make(g, {O, O, O})).count, 1);
  // Two disjoint squares at the ends of a 5 x 2 grid; vertices 2 and 7 stay
  // isolated.
  auto grid = grid_graph(5, 2, mixed_weights(13));
  std::vector<char> open(grid.num_edges(), 0);
  for (int e : {0, 1, 3, 9, 6, 7, 8, 12}) open[e] = 1;
  auto cd = clusters_of_edges(grid, open);
  EXPECT_EQ(cd.count, 4);
  // Brute-force oracle: union-find over the same edge set.
  std::vector<int> parent(grid.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
  for (int e = 0; e < grid.num_edges(); ++e)
    if (open[e]) parent[find(grid.origin(2 * e))] = find(grid.origin(2 * e + 1));
  std::set<int> roots;
  for (int v = 0; v < grid.num_vertices(); ++v) roots.insert(find(v));
  EXPECT_EQ(cd.count, static_cast<int>(roots.size()));
}

TEST(Clusters, TorusWinding) {
  auto g = torus_quotient(square_cell(Rational(1, 2)), 3);
  std::vector<char> open(g.num_edges(), 0);
  // Horizontal edges of row 0 (cell edge 0 in cells 0, 1, 2).
  for (int i = 0; i < 3; ++i) open[2 * i] = 1;
  auto cd = clusters_of_edges(g, open);
  const int c = cd.label[0];
  EXPECT_TRUE(cd.winds_x[c]);
  EXPECT_FALSE(cd.winds_y[c]);
}

TEST(Worm, SingleEdgeEvenProbability) {
  auto g = single_edge(Rational(3, 5));
  WormSampler s(g, {}, 7);
  const int n = 40000;
  int even = 0;
  for (int i = 0; i < n; ++i) even += s.sample().edges[0] == EdgeState::even;
  const double p = 0.2;
  EXPECT_NEAR(static_cast<double>(even) / n, p, 3 * std::sqrt(p * (1 - p) / n) + 1e-3);
}

TEST(Worm, SamplesAreValid) {
  for (const auto& name : {"c4", "k4", "torus2"}) {
    auto g = named_graph(name);
    for (const auto& b : {SourceSet{}, SourceSet::pair(0, 1)}) {
      WormSampler s(g, b, 11);
      for (int i = 0; i < 200; ++i) EXPECT_TRUE(is_valid_current(g, s.sample()));
    }
  }
}

TEST(Worm, ChainSeedsDiffer) {
  EXPECT_NE(chain_seed(1, 0), chain_seed(1, 1));
  EXPECT_EQ(chain_seed(5, 3), chain_seed(5, 3));
}

}  // namespace
}  // namespace rcd
