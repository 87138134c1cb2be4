#include <gtest/gtest.h>

#include <map>
#include <set>

#include "rcd/flow.hpp"
#include "rcd/lattice.hpp"

namespace rcd {
namespace {

// Oracle: all 8^|E| strand subsets, filtered by the alternation check only.
std::set<AlternatingFlow> brute_flows(const DirectedGraphTriple& t) {
  const int m = t.base.num_edges();
  std::set<AlternatingFlow> out;
  AlternatingFlow f = AlternatingFlow::empty(t);
  for (long code = 0; code < (1L << (3 * m)); ++code) {
    for (int e = 0; e < m; ++e) f.mask[e] = (code >> (3 * e)) & 7;
    if (is_alternating(t, f)) out.insert(f);
  }
  return out;
}

TEST(Flows, EmptyIsAlternating) {
  auto t = to_directed(named_graph("c3"));
  EXPECT_TRUE(is_alternating(t, AlternatingFlow::empty(t)));
  EXPECT_EQ(flow_weight(t, AlternatingFlow::empty(t)), Rational(8));
}

TEST(Flows, SameDirectionNeighboursRejected) {
  auto t = to_directed(single_edge(Rational(1, 2)));
  AlternatingFlow f = AlternatingFlow::empty(t);
  f.mask[0] = 0b101;  // s1 and s2 point the same way
  EXPECT_FALSE(is_alternating(t, f));
  EXPECT_THROW(flow_weight(t, f), std::invalid_argument);
  f.mask[0] = 0b011;
  EXPECT_TRUE(is_alternating(t, f));
  const Rational x(1, 2);
  EXPECT_EQ(flow_weight(t, f), x * middle_weight(x));
}

TEST(Flows, FaceBoundaryCycleAlternates) {
  // Around a face of C4 take the strand on the face side of each edge,
  // oriented consistently with the face walk.
  auto g = named_graph("c4");
  auto t = to_directed(g);
  for (int face = 0; face < g.num_faces(); ++face) {
    AlternatingFlow f = AlternatingFlow::empty(t);
    for (int h : g.face_boundary(face)) {
      const int e = EmbeddedGraph::edge_of(h);
      // Strands whose direction agrees with h.
      for (int d : t.strands_at(h))
        if (t.edges[d].tail == g.origin(h) && (f.mask[e] & 0b111) == 0) f.mask[e] |= 1 << static_cast<int>(t.edges[d].role);
    }
    // Every vertex then has one in and one out strand.
    EXPECT_TRUE(is_alternating(t, f));
  }
}

TEST(Theta, Examples) {
  auto t = to_directed(single_edge(Rational(1, 3)));
  AlternatingFlow f = AlternatingFlow::empty(t);
  EXPECT_EQ(theta(t, f).edges[0], EdgeState::absent);
  f.mask[0] = 0b111;
  EXPECT_EQ(theta(t, f).edges[0], EdgeState::odd);
  f.mask[0] = 0b011;
  EXPECT_EQ(theta(t, f).edges[0], EdgeState::even);
}

TEST(Flows, EnumerationMatchesBruteForce) {
  for (const auto& name : {"edge", "p3", "c3", "c4"}) {
    auto t = to_directed(named_graph(name));
    auto list = enumerate_flows(t);
    std::set<AlternatingFlow> s(list.begin(), list.end());
    EXPECT_EQ(s.size(), list.size());
    EXPECT_EQ(s, brute_flows(t)) << name;
  }
}

TEST(Flows, SingleEdgeFlowSet) {
  auto t = to_directed(single_edge(Rational(1, 2)));
  std::set<unsigned char> masks;
  for (const auto& f : enumerate_flows(t)) masks.insert(f.mask[0]);
  EXPECT_EQ(masks, (std::set<unsigned char>{0, 0b011, 0b110}));
}

TEST(Flows, DobrushinFlowsContainBoundary) {
  auto t = augment_dobrushin(to_directed(named_graph("c4")), 0, 2);
  auto list = enumerate_flows(t);
  EXPECT_FALSE(list.empty());
  for (const auto& f : list) {
    EXPECT_TRUE(f.boundary);
    EXPECT_TRUE(is_alternating(t, f));
    EXPECT_EQ(theta(t, f).sources, SourceSet::pair(0, 2));
  }
}

TEST(Flows, TotalWeightRelatesToDoubleCurrents) {
  // Z_flow * prod (1 - x_e^2) = Z_dcurr.
  for (const auto& name : {"edge", "c3", "bowtie"}) {
    auto g = named_graph(name);
    auto t = to_directed(g);
    Rational zf = 0, zd = 0, scale = 1;
    for (const auto& f : enumerate_flows(t)) zf += flow_weight(t, f);
    for (const auto& w : enumerate_currents(g, {})) zd += double_current_weight(g, w);
    for (int e = 0; e < g.num_edges(); ++e) scale *= 1 - g.weight(e) * g.weight(e);
    EXPECT_EQ(zf * scale, zd) << name;
  }
}

void expect_fibers_match(const DirectedGraphTriple& t, const SourceSet& b) {
  std::map<std::vector<EdgeState>, std::set<AlternatingFlow>> by_current;
  for (const auto& f : enumerate_flows(t)) by_current[theta(t, f).edges].insert(f);
  std::size_t total = 0;
  for (const auto& w : enumerate_currents(t.base, b)) {
    auto fiber = theta_fiber(t, w);
    std::set<AlternatingFlow> got;
    for (const auto& el : fiber) got.insert(el.flow);
    EXPECT_EQ(got.size(), fiber.size());
    EXPECT_EQ(got, by_current[w.edges]);
    total += fiber.size();
  }
  std::size_t flows = 0;
  for (const auto& [k, v] : by_current) flows += v.size();
  EXPECT_EQ(total, flows);
}

TEST(ThetaFiber, MatchesBruteForceFibers) {
  for (const auto& name : {"edge", "p3", "c3", "c4", "bowtie"}) {
    expect_fibers_match(to_directed(named_graph(name)), {});
    expect_fibers_match(to_directed(named_graph(name), reversed(middle_low_to_high)), {});
  }
  expect_fibers_match(augment_dobrushin(to_directed(named_graph("c4")), 0, 2), SourceSet::pair(0, 2));
  expect_fibers_match(augment_dobrushin(to_directed(named_graph("p3")), 0, 2), SourceSet::pair(0, 2));
}

TEST(ThetaFiber, EmptyCurrent) {
  auto t = to_directed(named_graph("c4"));
  auto fiber = theta_fiber(t, Current::empty(t.base));
  ASSERT_EQ(fiber.size(), 1u);
  EXPECT_EQ(fiber[0].flow, AlternatingFlow::empty(t));
}

// With middles alternating in direction along the cycle, exactly every
// second odd edge branches three ways in each orientation.
TEST(ThetaFiber, SingleOddCycle) {
  for (int n : {4, 6}) {
    auto g = cycle_graph(n, mixed_weights(n));
    auto t = to_directed(g, [](const EmbeddedGraph&, int e) { return e % 2 == 0; });
    Current w = Current::empty(g);
    std::fill(w.edges.begin(), w.edges.end(), EdgeState::odd);
    long expected = 2;
    for (int i = 0; i < n / 2; ++i) expected *= 3;
    EXPECT_EQ(static_cast<long>(theta_fiber(t, w).size()), expected) << n;
  }
}

// Otherwise the two orientations branch on k and 2m - k edges.
TEST(ThetaFiber, SingleOddCycleChainedMiddles) {
  auto g = cycle_graph(4, mixed_weights(4));
  auto t = to_directed(g, [](const EmbeddedGraph&, int) { return true; });
  Current w = Current::empty(g);
  std::fill(w.edges.begin(), w.edges.end(), EdgeState::odd);
  auto fiber = theta_fiber(t, w);
  std::map<std::vector<int>, int> per_xi;
  for (const auto& el : fiber) ++per_xi[el.xi];
  ASSERT_EQ(per_xi.size(), 2u);
  std::multiset<int> sizes;
  for (const auto& [xi, c] : per_xi) sizes.insert(c);
  EXPECT_EQ(sizes, (std::multiset<int>{1, 81}));
}

TEST(ThetaFiber, PerOrientationWeight) {
  for (const auto& name : {"c3", "c4", "bowtie"}) {
    auto g = named_graph(name);
    auto t = to_directed(g);
    for (const auto& w : enumerate_currents(g, {})) {
      auto cd = clusters(g, w);
      Rational expected = 1;
      for (int e = 0; e < g.num_edges(); ++e) {
        const Rational& x = g.weight(e);
        if (w.is_odd(e)) expected *= 2 * x / (1 - x * x);
        if (w.edges[e] == EdgeState::even) expected *= 2 * x * x / (1 - x * x);
      }
      int isolated = 0;
      for (int c = 0; c < cd.count; ++c) isolated += cd.isolated(c);
      expected *= Rational(1 << isolated);
      std::map<std::vector<int>, Rational> per_xi;
      for (const auto& el : theta_fiber(t, w)) per_xi[el.xi] += flow_weight(t, el.flow);
      for (const auto& [xi, sum] : per_xi) EXPECT_EQ(sum, expected) << name;
    }
  }
}

TEST(ThetaFiber, SecondTypeWeightIdentity) {
  for (const Rational x : {Rational(1, 3), Rational(2, 5), Rational(1, 2)}) {
    const Rational y = middle_weight(x);
    EXPECT_EQ(x + x + x * y * x, y);
  }
}

TEST(ThetaFiber, PushforwardIsDoubleCurrentMeasure) {
  for (const auto& name : {"c3", "c4", "k4"}) {
    auto g = named_graph(name);
    auto t = to_directed(g);
    std::map<std::vector<EdgeState>, Rational> push;
    Rational zf = 0, zd = 0;
    for (const auto& f : enumerate_flows(t)) {
      Rational wt = flow_weight(t, f);
      push[theta(t, f).edges] += wt;
      zf += wt;
    }
    std::map<std::vector<EdgeState>, Rational> dc;
    for (const auto& w : enumerate_currents(g, {})) {
      dc[w.edges] = double_current_weight(g, w);
      zd += dc[w.edges];
    }
    for (const auto& [cfg, wt] : dc) EXPECT_EQ(push[cfg] / zf, wt / zd) << name;
  }
}

TEST(ThetaFiber, SamplerStaysInFiber) {
  auto g = named_graph("bowtie");
  auto t = to_directed(g);
  std::mt19937_64 rng(3);
  for (const auto& w : enumerate_currents(g, {})) {
    auto f = sample_flow_given_current(t, w, rng);
    EXPECT_TRUE(is_alternating(t, f));
    EXPECT_EQ(theta(t, f), w);
  }
}

}  // namespace
}  // namespace rcd
