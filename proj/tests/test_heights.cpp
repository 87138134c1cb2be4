#include <gtest/gtest.h>

#include <map>
#include <set>

#include "rcd/height.hpp"
#include "rcd/lattice.hpp"

namespace rcd {
namespace {

using Law = std::map<std::vector<Rational>, Rational>;

void normalize(Law& law) {
  Rational z = 0;
  for (auto& [k, p] : law) z += p;
  for (auto& [k, p] : law) p /= z;
}

// Oracle: sum of the fluxes across a shortest dual path in G^d.
Rational direct_height(const DirectedGraphTriple& t, const DimerGraph& dg, const DimerCover& m, int face) {
  auto f0 = reference_form(t, dg);
  std::set<int> in(m.edges.begin(), m.edges.end());
  auto path = shortest_face_path(dg.graph, dg.face_of_carrier_face(t.carrier.outer_face()), face);
  Rational h = 0;
  for (int hh : path.crossed) {
    int e = EmbeddedGraph::edge_of(hh);
    Rational flux = Rational(in.count(e)) - f0[e];
    h += dg.white[dg.graph.origin(hh)] ? Rational(-flux) : flux;
  }
  return h;
}

// Oracle: crossing parity of the odd edges of a cluster along a shortest
// carrier face path from the unbounded face.
bool direct_odd_around(const DirectedGraphTriple& t, const Current& w, int cluster, int u) {
  auto c = clusters(t.base, w);
  auto path = shortest_face_path(t.carrier, t.carrier.outer_face(), u);
  return odd_wrt_path(t, w, cluster, path);
}

std::vector<Rational> as_rationals(const std::vector<int>& v) { return {v.begin(), v.end()}; }

std::vector<Rational> restrict(const DirectedGraphTriple& t, const std::vector<Rational>& v) {
  std::vector<Rational> out;
  for (int f : base_faces(t)) out.push_back(v[f]);
  return out;
}

Law height_law(const DirectedGraphTriple& t, const DimerGraph& dg) {
  Law law;
  for_each_matching(dg, [&](const DimerCover& m) {
    law[restrict(t, on_carrier_faces(dg, height(t, dg, m)))] += dimer_measure_weight(dg, m);
  });
  normalize(law);
  return law;
}

Law nesting_law(const DirectedGraphTriple& t) {
  Law law;
  const auto& g = t.base;
  SourceSet b = t.dobrushin ? SourceSet::pair(t.dobrushin->first, t.dobrushin->second) : SourceSet{};
  for (const auto& w : enumerate_currents(g, b)) {
    auto c = clusters(g, w);
    const Rational wt = double_current_weight(g, w);
    for (int mask = 0; mask < (1 << c.count); ++mask) {
      std::vector<int> xi(c.count);
      for (int k = 0; k < c.count; ++k) xi[k] = (mask >> k & 1) ? -1 : 1;
      law[restrict(t, as_rationals(nesting_field(t, w, xi).value))] += wt / Rational(1 << c.count);
    }
  }
  normalize(law);
  return law;
}

TEST(ReferenceForm, HalfOnShortEdges) {
  auto t = to_directed(named_graph("bowtie"));
  auto dg = to_dimer_graph(t);
  auto f0 = reference_form(t, dg);
  std::vector<Rational> div(dg.num_vertices(), 0);
  for (int e = 0; e < dg.num_edges(); ++e) {
    EXPECT_EQ(f0[e], dg.kind[e] == DimerEdgeKind::short_edge ? Rational(1, 2) : Rational(0));
    div[dg.white_of(e)] += f0[e];
    div[dg.black_of(e)] += f0[e];
  }
  for (const auto& d : div) EXPECT_EQ(d, 1);
}

TEST(ReferenceForm, DobrushinReferenceIsACover) {
  for (auto [name, a, b] : {std::tuple{"p3", 0, 2}, {"c4", 0, 2}, {"c4", 1, 0}, {"bowtie", 0, 3}}) {
    auto t = augment_dobrushin(to_directed(named_graph(name)), a, b);
    auto dg = to_dimer_graph(t);
    auto m0 = dobrushin_reference_matching(t, dg);
    EXPECT_TRUE(is_perfect_matching(dg, m0)) << name;
    auto w = pi(t, dg, m0);
    for (int e = 0; e < t.base.num_edges(); ++e) EXPECT_NE(w.edges[e], EdgeState::even);
    for (const auto& h : height(t, dg, m0).value) EXPECT_EQ(h, 0);
  }
}

TEST(Height, AllShortCoverIsFlat) {
  auto t = to_directed(named_graph("c3"));
  auto dg = to_dimer_graph(t);
  DimerCover m;
  for (std::size_t z = 0; z < dg.cycle.size(); ++z)
    for (std::size_t i = 0; i < dg.cycle_edges[z].size(); i += 2) m.edges.push_back(dg.cycle_edges[z][i]);
  std::sort(m.edges.begin(), m.edges.end());
  auto h = height(t, dg, m);
  EXPECT_EQ(h.value[h.base_face], 0);
  for (const auto& v : on_carrier_faces(dg, h)) EXPECT_EQ(v, 0);
  for (const auto& v : on_base_vertices(dg, h)) EXPECT_EQ(abs(v), Rational(1, 2));
}

TEST(Height, MatchesDirectFlux) {
  for (const auto& name : {"c3", "bowtie", "theta"}) {
    auto t = to_directed(named_graph(name));
    auto dg = to_dimer_graph(t);
    int count = 0;
    for_each_matching(dg, [&](const DimerCover& m) {
      if (count++ % 7) return;
      auto h = height(t, dg, m);
      for (int f = 0; f < dg.graph.num_faces(); ++f) ASSERT_EQ(h.value[f], direct_height(t, dg, m, f)) << name;
    });
  }
}

TEST(Height, IntegerOnCarrierFacesHalfOnVertices) {
  auto t = to_directed(named_graph("c4"));
  auto dg = to_dimer_graph(t);
  for_each_matching(dg, [&](const DimerCover& m) {
    auto h = height(t, dg, m);
    for (const auto& v : on_carrier_faces(dg, h)) EXPECT_EQ(v.get_den(), 1);
    for (const auto& v : on_base_vertices(dg, h)) EXPECT_EQ(v.get_den(), 2);
  });
}

TEST(Height, SingleOddContour) {
  auto t = to_directed(named_graph("c3"));
  auto dg = to_dimer_graph(t);
  const int inner = 1 - t.carrier.outer_face();
  int seen = 0;
  for_each_matching(dg, [&](const DimerCover& m) {
    auto w = pi(t, dg, m);
    if (!(w.is_odd(0) && w.is_odd(1) && w.is_odd(2))) return;
    ++seen;
    EXPECT_EQ(abs(on_carrier_faces(dg, height(t, dg, m))[inner]), 1);
  });
  EXPECT_GT(seen, 0);
}

TEST(Height, ConstantOnClusterVertices) {
  for (const auto& name : {"c4", "bowtie"}) {
    auto t = to_directed(named_graph(name));
    auto dg = to_dimer_graph(t);
    for_each_matching(dg, [&](const DimerCover& m) {
      auto w = pi(t, dg, m);
      auto hv = on_base_vertices(dg, height(t, dg, m));
      for (int e = 0; e < t.base.num_edges(); ++e)
        if (w.is_open(e)) EXPECT_EQ(hv[t.base.origin(2 * e)], hv[t.base.origin(2 * e + 1)]) << name;
    });
  }
}

TEST(Height, TorusIsRejected) {
  auto t = to_directed(named_graph("torus2"));
  auto dg = to_dimer_graph(t);
  auto m = enumerate_matchings(dg).front();
  EXPECT_THROW(height(t, dg, m), std::domain_error);
}

TEST(FlowHeight, EmptyFlowIsZero) {
  auto t = to_directed(named_graph("k4"));
  for (int v : flow_height(t, AlternatingFlow::empty(t))) EXPECT_EQ(v, 0);
}

TEST(FlowHeight, CounterclockwiseCycle) {
  auto g = named_graph("c4");
  const int inner = 1 - g.outer_face();
  std::set<int> ccw(g.face_boundary(inner).begin(), g.face_boundary(inner).end());
  auto t = to_directed(g, [&](const EmbeddedGraph&, int e) { return ccw.count(2 * e) > 0; });
  AlternatingFlow f = AlternatingFlow::empty(t);
  for (auto& m : f.mask) m = 0b010;
  ASSERT_TRUE(is_alternating(t, f));
  auto h = flow_height(t, f);
  EXPECT_EQ(h[inner], 1);
  EXPECT_EQ(h[g.outer_face()], 0);
}

TEST(FlowHeight, AgreesWithDimerHeight) {
  std::vector<DirectedGraphTriple> triples;
  for (const auto& name : {"edge", "p3", "c3", "c4", "bowtie", "theta"}) triples.push_back(to_directed(named_graph(name)));
  triples.push_back(augment_dobrushin(to_directed(named_graph("p3")), 0, 2));
  triples.push_back(augment_dobrushin(to_directed(named_graph("c4")), 0, 2));
  for (const auto& t : triples) {
    auto dg = to_dimer_graph(t);
    for_each_matching(dg, [&](const DimerCover& m) {
      EXPECT_EQ(on_carrier_faces(dg, height(t, dg, m)), as_rationals(flow_height(t, eta(t, dg, m))));
    });
  }
}

TEST(OddAround, Basics) {
  auto g = named_graph("c3");
  auto t = to_directed(g);
  const int inner = 1 - g.outer_face();
  Current w = Current::empty(g);
  for (auto& s : w.edges) s = EdgeState::odd;
  EXPECT_TRUE(odd_around(t, w, 0, inner));
  EXPECT_FALSE(odd_around(t, w, 0, g.outer_face()));
  w.edges[1] = EdgeState::even;
  EXPECT_THROW(odd_around(t, w, 0, inner), std::logic_error);
}

TEST(OddAround, PathIndependent) {
  for (const auto& name : {"c4", "bowtie", "k4", "theta"}) {
    auto g = named_graph(name);
    auto t = to_directed(g);
    for (const auto& w : enumerate_currents(g, {})) {
      auto c = clusters(g, w);
      for (int k = 0; k < c.count; ++k)
        for (int u = 0; u < t.carrier.num_faces(); ++u)
          EXPECT_EQ(odd_around(t, w, k, u), direct_odd_around(t, w, k, u)) << name;
    }
  }
}

TEST(NestingField, Basics) {
  auto g = named_graph("c3");
  auto t = to_directed(g);
  for (int v : nesting_field(t, Current::empty(g), std::vector<int>(3, 1)).value) EXPECT_EQ(v, 0);
  Current w = Current::empty(g);
  for (auto& s : w.edges) s = EdgeState::odd;
  auto s = nesting_field(t, w, std::vector<int>{1});
  EXPECT_EQ(s.value[1 - g.outer_face()], 1);
  EXPECT_EQ(s.value[g.outer_face()], 0);
  EXPECT_THROW(nesting_field(to_directed(named_graph("torus2")), Current::empty(named_graph("torus2")), {1}),
               std::domain_error);
}

TEST(NestingField, RandomSignsAreFair) {
  auto g = named_graph("c3");
  auto t = to_directed(g);
  Current w = Current::empty(g);
  for (auto& s : w.edges) s = EdgeState::odd;
  std::mt19937_64 rng(3);
  int plus = 0;
  const int n = 4000;
  for (int i = 0; i < n; ++i) plus += nesting_field(t, w, rng).value[1 - g.outer_face()] == 1;
  EXPECT_NEAR(plus / double(n), 0.5, 4 * std::sqrt(0.25 / n));
}

TEST(NestingField, LawEqualsHeightLaw) {
  for (const auto& name : {"edge", "p3", "c3", "c4", "bowtie", "theta", "k4"}) {
    auto t = to_directed(named_graph(name));
    EXPECT_EQ(height_law(t, to_dimer_graph(t)), nesting_law(t)) << name;
  }
}

TEST(NestingField, DobrushinLawEqualsHeightLaw) {
  for (auto [name, a, b] : {std::tuple{"p3", 0, 2}, {"c4", 0, 2}, {"c4", 1, 0}, {"bowtie", 0, 3}}) {
    auto t = augment_dobrushin(to_directed(named_graph(name)), a, b);
    EXPECT_EQ(height_law(t, to_dimer_graph(t)), nesting_law(t)) << name << " " << a << " " << b;
  }
}

TEST(Coupling, OrientationsAreConditionallyUniform) {
  for (const auto& name : {"c4", "bowtie", "theta"}) {
    auto g = named_graph(name);
    auto t = to_directed(g);
    for (const auto& w : enumerate_currents(g, {})) {
      auto fiber = theta_fiber(t, w);
      auto c = clusters(g, w);
      for (int k = 0; k < c.count; ++k) {
        Rational plus = 0, minus = 0;
        for (const auto& el : fiber) (el.xi[k] > 0 ? plus : minus) += flow_weight(t, el.flow);
        if (c.size[k] > 1) EXPECT_EQ(plus, minus) << name;
      }
    }
  }
}

TEST(Coupling, IsolatedVertexFacesSplitByHalf) {
  auto t = to_directed(named_graph("bowtie"));
  auto dg = to_dimer_graph(t);
  for (const auto& f : enumerate_flows(t)) {
    auto iso = isolated_vertices(t, f);
    std::set<std::vector<Rational>> offsets;
    for (const auto& m : eta_fiber(t, dg, f)) {
      auto h = height(t, dg, m);
      auto hv = on_base_vertices(dg, h);
      auto hf = on_carrier_faces(dg, h);
      std::vector<Rational> o;
      for (int z : iso) {
        // Any carrier face at z: the face left of its first half-edge.
        Rational d = hv[z] - hf[t.carrier.face_of(t.carrier.rotation(z).front())];
        EXPECT_EQ(abs(d), Rational(1, 2));
        o.push_back(d);
      }
      offsets.insert(o);
    }
    EXPECT_EQ(offsets.size(), std::size_t{1} << iso.size());
  }
}

// Closed dual loops f -> f' -> f through two distinct edges.
std::vector<FacePath> two_edge_loops(const EmbeddedGraph& g) {
  std::vector<FacePath> out;
  for (int f = 0; f < g.num_faces(); ++f)
    for (int h1 : g.face_boundary(f)) {
      int f2 = g.face_of(EmbeddedGraph::twin(h1));
      for (int h2 : g.face_boundary(f2))
        if (EmbeddedGraph::edge_of(h2) != EmbeddedGraph::edge_of(h1) && g.face_of(EmbeddedGraph::twin(h2)) == f)
          out.push_back(face_path_from_crossings(g, f, {h1, h2}));
    }
  return out;
}

TEST(Increments, PlaneConsistency) {
  auto g = named_graph("bowtie");
  auto t = to_directed(g);
  auto dg = to_dimer_graph(t);
  auto ms = enumerate_matchings(dg);
  for (int u = 0; u < t.carrier.num_faces(); ++u) {
    auto path = shortest_face_path(t.carrier, t.carrier.outer_face(), u);
    for (std::size_t i = 0; i < ms.size(); i += 5)
      EXPECT_EQ(increment_along(t, dg, ms[i], path), on_carrier_faces(dg, height(t, dg, ms[i]))[u]);
    for (const auto& w : enumerate_currents(g, {})) {
      auto c = clusters(g, w);
      std::vector<int> xi(c.count);
      for (int k = 0; k < c.count; ++k) xi[k] = k % 2 ? 1 : -1;
      EXPECT_EQ(increment_along(t, w, xi, path), nesting_field(t, w, xi).value[u]);
    }
  }
}

TEST(Increments, DoubleCrossingIsEven) {
  auto g = named_graph("c3");
  auto t = to_directed(g);
  Current w = Current::empty(g);
  for (auto& s : w.edges) s = EdgeState::odd;
  auto loops = two_edge_loops(t.carrier);
  ASSERT_FALSE(loops.empty());
  for (const auto& p : loops) EXPECT_FALSE(odd_wrt_path(t, w, 0, p));
}

TEST(Increments, TorusLawsAgree) {
  auto g = named_graph("torus2");
  auto t = to_directed(g);
  auto dg = to_dimer_graph(t);
  auto matchings = enumerate_matchings(dg);
  // Only currents carrying an alternating flow are reached by the dimers.
  std::vector<Current> currents;
  for (const auto& w : enumerate_currents(g, {}))
    if (!theta_fiber(t, w).empty()) currents.push_back(w);
  std::vector<FacePath> paths = two_edge_loops(t.carrier);
  for (int u = 1; u < t.carrier.num_faces(); ++u) paths.push_back(shortest_face_path(t.carrier, 0, u));
  for (const auto& path : paths) {
    Law hl, sl;
    for (const auto& m : matchings) hl[{increment_along(t, dg, m, path)}] += dimer_measure_weight(dg, m);
    for (const auto& w : currents) {
      auto c = clusters(g, w);
      const Rational wt = double_current_weight(g, w);
      for (int mask = 0; mask < (1 << c.count); ++mask) {
        std::vector<int> xi(c.count);
        for (int k = 0; k < c.count; ++k) xi[k] = (mask >> k & 1) ? -1 : 1;
        sl[{Rational(increment_along(t, w, xi, path))}] += wt / Rational(1 << c.count);
      }
    }
    normalize(hl);
    normalize(sl);
    EXPECT_EQ(hl, sl);
  }
}

TEST(Increments, VarianceIsExpectedOddCount) {
  auto g = named_graph("c4");
  auto t = to_directed(g);
  auto path = shortest_face_path(t.carrier, t.carrier.outer_face(), 1 - t.carrier.outer_face());
  Rational z = 0, second = 0, n_odd = 0;
  for (const auto& w : enumerate_currents(g, {})) {
    auto c = clusters(g, w);
    const Rational wt = double_current_weight(g, w);
    z += wt;
    int n = 0;
    for (int k = 0; k < c.count; ++k) n += odd_wrt_path(t, w, k, path);
    n_odd += wt * n;
    for (int mask = 0; mask < (1 << c.count); ++mask) {
      std::vector<int> xi(c.count);
      for (int k = 0; k < c.count; ++k) xi[k] = (mask >> k & 1) ? -1 : 1;
      int s = increment_along(t, w, xi, path);
      second += wt * s * s / Rational(1 << c.count);
    }
  }
  EXPECT_EQ(second / z, n_odd / z);
  EXPECT_GT(n_odd, 0);
}

}  // namespace
}  // namespace rcd
