#pragma once

#include <array>
#include <string>
#include <vector>

#include "rcd/embedded_graph.hpp"

namespace rcd {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Builds a plane graph from a straight-line drawing: rotations are sorted by
// angle, the unbounded face is the one traced clockwise.
EmbeddedGraph from_drawing(const std::vector<Point>& points,
                           const std::vector<std::array<int, 2>>& edges,
                           const std::vector<Rational>& weights, bool base_graph = true);

// Fundamental domain of a biperiodic graph: edge (u, v, dx, dy) joins u in
// cell (0,0) to v in cell (dx, dy).
struct PeriodicCell {
  struct Edge {
    int u = 0;
    int v = 0;
    int dx = 0;
    int dy = 0;
    Rational weight;
  };
  std::vector<Point> positions;  // inside the unit cell
  std::vector<Edge> edges;
};

PeriodicCell square_cell(const Rational& x);
PeriodicCell hexagonal_cell(const Rational& x);

// G_n = G / (nZ + nZ). Vertex (i, j, k) of cell (i, j) gets id
// (j * n + i) * cell_vertices + k, and cell edge c of cell (i, j) gets id
// (j * n + i) * cell_edges + c.
EmbeddedGraph torus_quotient(const PeriodicCell& cell, int n);

// Same embedding with replaced edge weights.
EmbeddedGraph with_weights(const EmbeddedGraph& g, std::vector<Rational> weights);

// Cycles every edge through `pattern`.
std::vector<Rational> cycled_weights(int num_edges, const std::vector<Rational>& pattern);
// The mixed pattern {1/3, 2/5, 1/2} used by the verification suite.
std::vector<Rational> mixed_weights(int num_edges);

EmbeddedGraph single_edge(const Rational& x);
EmbeddedGraph path_graph(int vertices, const std::vector<Rational>& weights);
EmbeddedGraph cycle_graph(int vertices, const std::vector<Rational>& weights);
// Two triangles sharing vertex 0.
EmbeddedGraph bowtie(const std::vector<Rational>& weights);
// K4 drawn as a triangle with a central vertex 3.
EmbeddedGraph k4(const std::vector<Rational>& weights);
// w x h vertex grid, edges ordered row-major (right edge then up edge).
EmbeddedGraph grid_graph(int width, int height, const std::vector<Rational>& weights);
// Two vertices joined by three parallel arcs (not a base graph).
EmbeddedGraph theta_graph(const std::vector<Rational>& weights);

// Named graph lookup used by the CLI and the verification suite:
// edge, p3, c3, c4, c5, c6, bowtie, k4, theta, grid2x3, torus2 (2x2 square torus).
EmbeddedGraph named_graph(const std::string& name);
std::vector<std::string> suite_graph_names();

}  // namespace rcd
