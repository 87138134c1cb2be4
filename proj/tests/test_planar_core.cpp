#include <gtest/gtest.h>

#include <set>

#include "rcd/graph_io.hpp"
#include "rcd/lattice.hpp"
#include "rcd/quadratic.hpp"

namespace rcd {
namespace {

TEST(Rational, ParsesAndPrintsCanonically) {
  EXPECT_EQ(to_string(parse_rational("2/4")), "1/2");
  EXPECT_EQ(to_string(parse_rational("-3")), "-3");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("a/b"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
}

TEST(Quadratic, SqrtMultipliesBackToRadicand) {
  std::vector<Rational> rads = {Rational(8, 9), Rational(21, 25), Rational(3, 4)};
  auto field = RadicalField::containing(rads);
  EXPECT_EQ(field->primes(), (std::vector<unsigned long>{2, 3, 7}));
  for (const auto& r : rads) {
    auto s = QuadraticNumber::sqrt(field, r);
    EXPECT_FALSE(s.is_rational());
    EXPECT_EQ((s * s).to_rational(), r);
  }
  auto a = QuadraticNumber::sqrt(field, Rational(21, 25));
  auto b = QuadraticNumber::sqrt(field, Rational(3, 4));
  EXPECT_NEAR((a * b).to_double(), std::sqrt(21.0 / 25 * 3.0 / 4), 1e-12);
  EXPECT_THROW(QuadraticNumber::sqrt(field, Rational(5)), std::domain_error);
}

TEST(BuildGraph, TriangleHasTwoFaces) {
  auto g = cycle_graph(3, mixed_weights(3));
  EXPECT_EQ(g.num_faces(), 2);
  EXPECT_EQ(g.euler_characteristic(), 2);
  EXPECT_EQ(g.face_boundary(g.outer_face()).size(), 3u);
}

TEST(BuildGraph, SquareTorusTwoByTwo) {
  auto g = torus_quotient(square_cell(Rational(1, 2)), 2);
  EXPECT_EQ(g.num_vertices(), 4);
  EXPECT_EQ(g.num_edges(), 8);
  EXPECT_EQ(g.num_faces(), 4);
  EXPECT_EQ(g.euler_characteristic(), 0);
}

TEST(BuildGraph, RotationOmittingHalfEdgeIsRejected) {
  GraphInput in;
  in.num_vertices = 2;
  in.rotations = {{0}, {}};
  in.weights = {Rational(1, 2)};
  in.outer_half_edge = 0;
  EXPECT_THROW(EmbeddedGraph{in}, GraphError);
}

TEST(BuildGraph, WeightOutsideUnitIntervalRejected) {
  EXPECT_THROW(single_edge(Rational(1)), GraphError);
  EXPECT_THROW(single_edge(Rational(0)), GraphError);
}

TEST(BuildGraph, NonSimpleBaseGraphRejected) {
  GraphInput in = theta_graph(mixed_weights(3)).to_input();
  in.base_graph = true;
  EXPECT_THROW(EmbeddedGraph{in}, GraphError);
}

TEST(BuildGraph, EulerMismatchRejected) {
  // A triangle declared toroidal.
  GraphInput in = cycle_graph(3, mixed_weights(3)).to_input();
  in.topology = Topology::torus;
  in.outer_half_edge.reset();
  in.shifts.assign(3, Shift{});
  EXPECT_THROW(EmbeddedGraph{in}, GraphError);
}

TEST(BuildGraph, IsolatedVerticesAllowedOnPlane) {
  auto g = from_drawing({{0, 0}, {1, 0}, {5, 5}}, {{0, 1}}, {Rational(1, 3)});
  EXPECT_EQ(g.num_isolated_vertices(), 1);
  EXPECT_EQ(g.euler_characteristic(), 2);
}

TEST(Faces, SingleEdgeHasOneFaceOfDegreeTwo) {
  auto g = single_edge(Rational(1, 2));
  ASSERT_EQ(g.num_faces(), 1);
  EXPECT_EQ(g.face_boundary(0).size(), 2u);
}

TEST(Faces, FourCycleHasTwoFacesOfDegreeFour) {
  auto g = cycle_graph(4, mixed_weights(4));
  ASSERT_EQ(g.num_faces(), 2);
  EXPECT_EQ(g.face_boundary(0).size(), 4u);
  EXPECT_EQ(g.face_boundary(1).size(), 4u);
}

TEST(Faces, ThetaGraphHasThreeFaces) { EXPECT_EQ(theta_graph(mixed_weights(3)).num_faces(), 3); }

TEST(Faces, EveryHalfEdgeOnExactlyOneFace) {
  for (const auto& name : {"c5", "bowtie", "k4", "grid2x3", "torus2", "theta"}) {
    auto g = named_graph(name);
    std::vector<int> count(g.num_half_edges(), 0);
    for (int f = 0; f < g.num_faces(); ++f)
      for (int h : g.face_boundary(f)) {
        ++count[h];
        EXPECT_EQ(g.face_of(h), f);
      }
    for (int c : count) EXPECT_EQ(c, 1) << name;
  }
}

TEST(Dual, TriangleDualIsThetaLike) {
  auto d = dual(cycle_graph(3, mixed_weights(3)));
  EXPECT_EQ(d.num_vertices(), 2);
  EXPECT_EQ(d.num_edges(), 3);
  EXPECT_FALSE(d.is_simple());
  EXPECT_EQ(d.num_faces(), 3);
}

TEST(Dual, SquareTorusIsSelfDual) {
  auto g = torus_quotient(square_cell(Rational(1, 2)), 3);
  auto d = dual(g);
  EXPECT_EQ(d.num_vertices(), 9);
  EXPECT_EQ(d.num_edges(), 18);
  EXPECT_EQ(d.num_faces(), 9);
  for (int v = 0; v < d.num_vertices(); ++v) EXPECT_EQ(d.degree(v), 4);
}

// The double dual maps half-edge h to twin(h) (the dual of the dual reverses
// crossing direction) and must preserve the rotation system and weights.
TEST(Dual, DoubleDualIsIsomorphic) {
  for (const auto& name : {"c3", "c5", "bowtie", "k4", "grid2x3", "theta", "torus2"}) {
    auto g = named_graph(name);
    auto dd = dual(dual(g));
    ASSERT_EQ(dd.num_vertices(), g.num_vertices() - g.num_isolated_vertices()) << name;
    ASSERT_EQ(dd.num_edges(), g.num_edges());
    std::vector<int> vmap(g.num_vertices(), -1);
    for (int h = 0; h < g.num_half_edges(); ++h) {
      int m = EmbeddedGraph::twin(h);
      EXPECT_EQ(dd.rot_next(m), EmbeddedGraph::twin(g.rot_next(h))) << name;
      if (vmap[g.origin(h)] == -1) vmap[g.origin(h)] = dd.origin(m);
      EXPECT_EQ(vmap[g.origin(h)], dd.origin(m));
    }
    for (int e = 0; e < g.num_edges(); ++e) EXPECT_EQ(dd.weight(e), g.weight(e));
  }
}

TEST(TorusQuotient, UnitSquareCell) {
  auto g = torus_quotient(square_cell(Rational(1, 2)), 1);
  EXPECT_EQ(g.num_vertices(), 1);
  EXPECT_EQ(g.num_edges(), 2);
  EXPECT_EQ(g.num_faces(), 1);
}

TEST(TorusQuotient, FourByFour) {
  auto g = torus_quotient(square_cell(Rational(1, 2)), 4);
  EXPECT_EQ(g.num_vertices(), 16);
  EXPECT_EQ(g.num_edges(), 32);
  EXPECT_EQ(g.num_faces(), 16);
}

TEST(TorusQuotient, HexagonalCellEulerZero) {
  auto g = torus_quotient(hexagonal_cell(Rational(1, 2)), 2);
  EXPECT_EQ(g.euler_characteristic(), 0);
  for (int f = 0; f < g.num_faces(); ++f) EXPECT_EQ(g.face_boundary(f).size(), 6u);
}

TEST(TorusQuotient, ZeroSizeRejected) {
  EXPECT_THROW(torus_quotient(square_cell(Rational(1, 2)), 0), GraphError);
}

TEST(FacePaths, ShortestPathIsValid) {
  auto g = grid_graph(3, 3, mixed_weights(12));
  for (int f = 0; f < g.num_faces(); ++f) {
    auto p = shortest_face_path(g, g.outer_face(), f);
    EXPECT_NO_THROW(validate_face_path(g, p));
    EXPECT_EQ(p.faces.front(), g.outer_face());
    EXPECT_EQ(p.faces.back(), f);
  }
}

TEST(GraphIo, RoundTripIsBitExact) {
  for (const auto& name : suite_graph_names()) {
    auto g = named_graph(name);
    std::string text = serialize_graph(g);
    auto back = parse_graph(text);
    EXPECT_EQ(serialize_graph(back), text) << name;
    EXPECT_EQ(back.num_faces(), g.num_faces());
    EXPECT_EQ(back.outer_face(), g.outer_face());
  }
}

TEST(GraphIo, RejectsBrokenRotation) {
  auto j = graph_to_json(named_graph("c3"));
  j["half_edges"][0]["next_at_vertex"] = 0;
  EXPECT_THROW(graph_from_json(j), GraphError);
  auto k = graph_to_json(named_graph("c3"));
  k["edges"][0]["weight"] = "3/2";
  EXPECT_THROW(graph_from_json(k), GraphError);
}

}  // namespace
}  // namespace rcd
