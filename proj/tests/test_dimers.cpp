#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <map>
#include <set>

#include "rcd/kasteleyn.hpp"
#include "rcd/lattice.hpp"
#include "rcd/matching.hpp"

namespace rcd {
namespace {

// Oracle: all edge subsets of size |V|/2, kept when they cover each vertex once.
std::set<DimerCover> brute_matchings(const DimerGraph& dg) {
  const int m = dg.num_edges(), n = dg.num_vertices();
  std::set<DimerCover> out;
  for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
    if (std::popcount(mask) != n / 2) continue;
    DimerCover c;
    for (int e = 0; e < m; ++e)
      if (mask >> e & 1) c.edges.push_back(e);
    if (is_perfect_matching(dg, c)) out.insert(c);
  }
  return out;
}

DimerGraph two_cycle() {
  GraphInput in;
  in.num_vertices = 2;
  in.rotations = {{0, 2}, {3, 1}};
  in.weights = {Rational(1), Rational(1)};
  in.outer_half_edge = 0;
  in.base_graph = false;
  return plain_dimer_graph(EmbeddedGraph(in));
}

DimerGraph square(const std::vector<Rational>& w) {
  return plain_dimer_graph(from_drawing({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{{0, 1}}, {{1, 2}}, {{2, 3}}, {{3, 0}}}, w, false));
}

TEST(Matchings, SmallCounts) {
  EXPECT_EQ(enumerate_matchings(two_cycle()).size(), 2u);
  EXPECT_EQ(enumerate_matchings(square(std::vector<Rational>(4, Rational(1)))).size(), 2u);
  EXPECT_NEAR(kasteleyn_z(two_cycle()), 2.0, 1e-12);
}

TEST(Matchings, MatchesBruteForce) {
  for (const auto& name : {"edge", "p3", "c3"}) {
    auto dg = to_dimer_graph(to_directed(named_graph(name)));
    auto list = enumerate_matchings(dg);
    std::set<DimerCover> s(list.begin(), list.end());
    EXPECT_EQ(s.size(), list.size());
    EXPECT_EQ(s, brute_matchings(dg)) << name;
  }
}

TEST(Matchings, ParallelEqualsSerial) {
  for (const auto& name : {"c4", "bowtie", "k4"}) {
    auto dg = to_dimer_graph(to_directed(named_graph(name)));
    EXPECT_EQ(enumerate_matchings(dg), enumerate_matchings_parallel(dg)) << name;
    EXPECT_EQ(matching_partition_function(dg), matching_partition_function_parallel(dg)) << name;
  }
}

TEST(Matchings, Weights) {
  auto t = to_directed(single_edge(Rational(1, 2)));
  auto dg = to_dimer_graph(t);
  std::vector<Rational> weights;
  for (const auto& m : enumerate_matchings(dg)) weights.push_back(dimer_measure_weight(dg, m));
  std::multiset<Rational> got(weights.begin(), weights.end());
  // Four all-short covers and the two covers using the middle edge with one
  // side edge.
  std::multiset<Rational> expected{1, 1, 1, 1, Rational(4, 3) * Rational(1, 2), Rational(4, 3) * Rational(1, 2)};
  EXPECT_EQ(got, expected);
  DimerCover bad{{0}};
  EXPECT_THROW(dimer_measure_weight(dg, bad), std::invalid_argument);
}

TEST(Matchings, MarkedEdgeForced) {
  auto t = augment_dobrushin(to_directed(named_graph("p3")), 0, 2);
  auto dg = to_dimer_graph(t);
  auto list = enumerate_matchings(dg);
  EXPECT_FALSE(list.empty());
  for (const auto& m : list) EXPECT_TRUE(std::binary_search(m.edges.begin(), m.edges.end(), dg.marked_edge));
}

TEST(Kasteleyn, MatchesEnumeration) {
  for (const auto& name : {"edge", "p3", "c3", "c4", "bowtie", "k4", "theta", "torus2"}) {
    auto dg = to_dimer_graph(to_directed(named_graph(name)));
    const double z_enum = to_double(matching_partition_function(dg));
    EXPECT_NEAR(kasteleyn_z(dg) / z_enum, 1.0, 1e-9) << name;
  }
}

TEST(Kasteleyn, TorusQuotientOfSquareLattice) {
  // 4 x 4 square-lattice torus with mixed weights (bipartite, 16 vertices).
  auto g = with_weights(torus_quotient(square_cell(Rational(1, 2)), 4), mixed_weights(32));
  GraphInput in = g.to_input();
  in.base_graph = false;
  auto dg = plain_dimer_graph(EmbeddedGraph(in));
  EXPECT_NEAR(kasteleyn_z(dg) / to_double(matching_partition_function(dg)), 1.0, 1e-9);
}

TEST(Kasteleyn, MarkedPartitionFunction) {
  auto t = augment_dobrushin(to_directed(named_graph("c4")), 0, 2);
  auto dg = to_dimer_graph(t);
  EXPECT_NEAR(kasteleyn_z(dg) / to_double(matching_partition_function(dg)), 1.0, 1e-9);
}

TEST(Kasteleyn, EdgeMarginals) {
  auto dg = to_dimer_graph(to_directed(named_graph("bowtie")));
  std::vector<Rational> count(dg.num_edges(), 0);
  Rational z = 0;
  for_each_matching(dg, [&](const DimerCover& m) {
    Rational w = dimer_measure_weight(dg, m);
    z += w;
    for (int e : m.edges) count[e] += w;
  });
  auto p = KasteleynSystem(dg).edge_marginals();
  for (int e = 0; e < dg.num_edges(); ++e) EXPECT_NEAR(p[e], to_double(count[e] / z), 1e-10);
}

TEST(Eta, AllShortGivesEmptyFlow) {
  auto t = to_directed(named_graph("c3"));
  auto dg = to_dimer_graph(t);
  DimerCover m;
  for (std::size_t z = 0; z < dg.cycle.size(); ++z)
    for (std::size_t i = 0; i < dg.cycle_edges[z].size(); i += 2) m.edges.push_back(dg.cycle_edges[z][i]);
  std::sort(m.edges.begin(), m.edges.end());
  ASSERT_TRUE(is_perfect_matching(dg, m));
  EXPECT_EQ(dimer_measure_weight(dg, m), Rational(1));
  EXPECT_EQ(eta(t, dg, m), AlternatingFlow::empty(t));
  EXPECT_EQ(pi(t, dg, m), Current::empty(t.base));
}

TEST(Eta, FiberCardinality) {
  for (const auto& name : {"edge", "c3", "c4", "bowtie"}) {
    auto t = to_directed(named_graph(name));
    auto dg = to_dimer_graph(t);
    std::map<AlternatingFlow, std::set<DimerCover>> pre;
    for (const auto& m : enumerate_matchings(dg)) pre[eta(t, dg, m)].insert(m);
    for (const auto& f : enumerate_flows(t)) {
      auto fiber = eta_fiber(t, dg, f);
      EXPECT_EQ(fiber.size(), std::size_t{1} << isolated_vertices(t, f).size());
      EXPECT_EQ(std::set<DimerCover>(fiber.begin(), fiber.end()), pre[f]) << name;
    }
  }
}

TEST(Pi, PushforwardIsDoubleCurrent) {
  for (const auto& name : {"edge", "c3", "bowtie"}) {
    auto g = named_graph(name);
    auto t = to_directed(g);
    auto dg = to_dimer_graph(t);
    std::map<std::vector<EdgeState>, Rational> push;
    Rational zm = 0, zd = 0;
    for_each_matching(dg, [&](const DimerCover& m) {
      Rational w = dimer_measure_weight(dg, m);
      push[pi(t, dg, m).edges] += w;
      zm += w;
    });
    std::map<std::vector<EdgeState>, Rational> dc;
    for (const auto& w : enumerate_currents(g, {})) {
      dc[w.edges] = double_current_weight(g, w);
      zd += dc[w.edges];
    }
    EXPECT_EQ(push.size(), dc.size());
    for (const auto& [cfg, w] : dc) EXPECT_EQ(push[cfg] / zm, w / zd) << name;
  }
}

TEST(Pi, TorusPushforwardIsConditionedDoubleCurrent) {
  auto g = named_graph("torus2");
  auto t = to_directed(g);
  auto dg = to_dimer_graph(t);
  std::map<std::vector<EdgeState>, Rational> push, dc;
  Rational zm = 0, zd = 0;
  for_each_matching(dg, [&](const DimerCover& m) {
    Rational w = dimer_measure_weight(dg, m);
    push[pi(t, dg, m).edges] += w;
    zm += w;
  });
  int unreached = 0;
  for (const auto& w : enumerate_currents(g, {})) {
    if (theta_fiber(t, w).empty()) {
      ++unreached;
      continue;
    }
    dc[w.edges] = double_current_weight(g, w);
    zd += dc[w.edges];
  }
  EXPECT_GT(unreached, 0);
  EXPECT_EQ(push.size(), dc.size());
  for (const auto& [cfg, w] : dc) EXPECT_EQ(push[cfg] / zm, w / zd);
}

TEST(FiberSampler, EmptyCurrentIsUniformOverShortCovers) {
  auto t = to_directed(named_graph("p3"));
  auto dg = to_dimer_graph(t);
  std::mt19937_64 rng(5);
  std::map<DimerCover, int> freq;
  const int n = 8000;
  for (int i = 0; i < n; ++i) {
    auto m = sample_dimer_via_current(t, dg, Current::empty(t.base), rng);
    EXPECT_EQ(pi(t, dg, m), Current::empty(t.base));
    ++freq[m];
  }
  ASSERT_EQ(freq.size(), 8u);
  for (const auto& [m, c] : freq) EXPECT_NEAR(c / double(n), 1.0 / 8, 4 * std::sqrt(1.0 / 8 * 7 / 8 / n));
}

TEST(FiberSampler, StaysInFiber) {
  auto g = named_graph("bowtie");
  auto t = to_directed(g);
  auto dg = to_dimer_graph(t);
  std::mt19937_64 rng(9);
  for (const auto& w : enumerate_currents(g, {})) {
    auto m = sample_dimer_via_current(t, dg, w, rng);
    EXPECT_TRUE(is_perfect_matching(dg, m));
    EXPECT_EQ(pi(t, dg, m), w);
  }
}

}  // namespace
}  // namespace rcd
