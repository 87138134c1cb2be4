#include "rcd/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rcd {

namespace {

double signed_area(const EmbeddedGraph& g, const std::vector<Point>& points, int f) {
  double a = 0.0;
  for (int h : g.face_boundary(f)) {
    const Point& p = points[g.origin(h)];
    const Point& q = points[g.dest(h)];
    a += p.x * q.y - q.x * p.y;
  }
  return 0.5 * a;
}

}  // namespace

EmbeddedGraph from_drawing(const std::vector<Point>& points, const std::vector<std::array<int, 2>>& edges,
                           const std::vector<Rational>& weights, bool base_graph) {
  if (weights.size() != edges.size()) throw GraphError("weight count does not match edge count");
  const int n = static_cast<int>(points.size());
  std::vector<std::vector<std::pair<double, int>>> ends(n);
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    auto [u, v] = edges[e];
    if (u < 0 || v < 0 || u >= n || v >= n) throw GraphError("edge endpoint out of range");
    ends[u].push_back({std::atan2(points[v].y - points[u].y, points[v].x - points[u].x), 2 * e});
    ends[v].push_back({std::atan2(points[u].y - points[v].y, points[u].x - points[v].x), 2 * e + 1});
  }
  GraphInput in;
  in.num_vertices = n;
  in.rotations.resize(n);
  for (int v = 0; v < n; ++v) {
    std::sort(ends[v].begin(), ends[v].end());
    for (auto& [angle, h] : ends[v]) in.rotations[v].push_back(h);
  }
  in.weights = weights;
  in.base_graph = false;
  in.outer_half_edge = edges.empty() ? std::nullopt : std::optional<int>(0);
  // Provisional build to find the clockwise (unbounded) face.
  EmbeddedGraph probe(in);
  if (!edges.empty()) {
    int outer = 0;
    double best = signed_area(probe, points, 0);
    for (int f = 1; f < probe.num_faces(); ++f) {
      double a = signed_area(probe, points, f);
      if (a < best) {
        best = a;
        outer = f;
      }
    }
    in.outer_half_edge = probe.face_boundary(outer).front();
  }
  in.base_graph = base_graph;
  return EmbeddedGraph(std::move(in));
}

PeriodicCell square_cell(const Rational& x) {
  PeriodicCell c;
  c.positions = {{0.0, 0.0}};
  c.edges = {{0, 0, 1, 0, x}, {0, 0, 0, 1, x}};
  return c;
}

PeriodicCell hexagonal_cell(const Rational& x) {
  PeriodicCell c;
  c.positions = {{0.25, 0.25}, {0.75, 0.75}};
  c.edges = {{0, 1, 0, 0, x}, {0, 1, -1, 0, x}, {0, 1, 0, -1, x}};
  return c;
}

EmbeddedGraph torus_quotient(const PeriodicCell& cell, int n) {
  if (n <= 0) throw GraphError("torus size must be positive");
  const int cv = static_cast<int>(cell.positions.size());
  const int ce = static_cast<int>(cell.edges.size());
  if (cv == 0) throw GraphError("empty fundamental domain");
  for (const auto& e : cell.edges)
    if (e.u < 0 || e.v < 0 || e.u >= cv || e.v >= cv) throw GraphError("inconsistent cell identifications");

  auto floor_div = [](int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
  auto mod = [&](int a, int b) { return a - b * floor_div(a, b); };

  // Rotation at each cell vertex, shared by all copies.
  std::vector<std::vector<std::pair<double, int>>> local(cv);
  for (int c = 0; c < ce; ++c) {
    const auto& e = cell.edges[c];
    const Point& pu = cell.positions[e.u];
    const Point& pv = cell.positions[e.v];
    local[e.u].push_back({std::atan2(pv.y + e.dy - pu.y, pv.x + e.dx - pu.x), 2 * c});
    local[e.v].push_back({std::atan2(pu.y - e.dy - pv.y, pu.x - e.dx - pv.x), 2 * c + 1});
  }
  for (auto& l : local) std::sort(l.begin(), l.end());

  GraphInput in;
  in.topology = Topology::torus;
  in.base_graph = false;
  in.num_vertices = n * n * cv;
  in.weights.resize(n * n * ce);
  in.shifts.resize(n * n * ce);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int cell_id = j * n + i;
      for (int c = 0; c < ce; ++c) {
        const auto& e = cell.edges[c];
        const int id = cell_id * ce + c;
        in.weights[id] = e.weight;
        in.shifts[id] = {floor_div(i + e.dx, n), floor_div(j + e.dy, n)};
      }
    }
  // Half-edge 2*id sits at the u-copy in cell (i, j); the v-end must sit at
  // the wrapped neighbour cell, so move it there.
  std::vector<std::vector<int>> fixed(in.num_vertices);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int cell_id = j * n + i;
      for (int k = 0; k < cv; ++k)
        for (auto& [angle, local_h] : local[k]) {
          const int c = local_h / 2;
          const auto& e = cell.edges[c];
          if (local_h % 2 == 0) {
            fixed[cell_id * cv + k].push_back(2 * (cell_id * ce + c));
          } else {
            // The edge whose v-end is here belongs to cell (i - dx, j - dy).
            const int si = mod(i - e.dx, n), sj = mod(j - e.dy, n);
            fixed[cell_id * cv + k].push_back(2 * ((sj * n + si) * ce + c) + 1);
          }
        }
    }
  in.rotations = std::move(fixed);
  return EmbeddedGraph(std::move(in));
}

EmbeddedGraph with_weights(const EmbeddedGraph& g, std::vector<Rational> weights) {
  GraphInput in = g.to_input();
  if (weights.size() != in.weights.size()) throw GraphError("weight count does not match edge count");
  in.weights = std::move(weights);
  return EmbeddedGraph(std::move(in));
}

std::vector<Rational> cycled_weights(int num_edges, const std::vector<Rational>& pattern) {
  std::vector<Rational> w(num_edges);
  for (int e = 0; e < num_edges; ++e) w[e] = pattern[e % pattern.size()];
  return w;
}

std::vector<Rational> mixed_weights(int num_edges) {
  return cycled_weights(num_edges, {Rational(1, 3), Rational(2, 5), Rational(1, 2)});
}

EmbeddedGraph single_edge(const Rational& x) { return from_drawing({{0, 0}, {1, 0}}, {{0, 1}}, {x}); }

EmbeddedGraph path_graph(int vertices, const std::vector<Rational>& weights) {
  std::vector<Point> pts;
  std::vector<std::array<int, 2>> edges;
  for (int i = 0; i < vertices; ++i) pts.push_back({static_cast<double>(i), 0.0});
  for (int i = 0; i + 1 < vertices; ++i) edges.push_back({i, i + 1});
  return from_drawing(pts, edges, weights);
}

EmbeddedGraph cycle_graph(int vertices, const std::vector<Rational>& weights) {
  std::vector<Point> pts;
  std::vector<std::array<int, 2>> edges;
  for (int i = 0; i < vertices; ++i) {
    double t = 2.0 * std::numbers::pi * i / vertices;
    pts.push_back({std::cos(t), std::sin(t)});
    edges.push_back({i, (i + 1) % vertices});
  }
  return from_drawing(pts, edges, weights);
}

EmbeddedGraph bowtie(const std::vector<Rational>& weights) {
  return from_drawing({{0, 0}, {-1, 1}, {-1, -1}, {1, 1}, {1, -1}},
                      {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}}, weights);
}

EmbeddedGraph k4(const std::vector<Rational>& weights) {
  return from_drawing({{0, 2}, {-2, -1}, {2, -1}, {0, 0}}, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 3}, {2, 3}},
                      weights);
}

EmbeddedGraph grid_graph(int width, int height, const std::vector<Rational>& weights) {
  std::vector<Point> pts;
  std::vector<std::array<int, 2>> edges;
  for (int j = 0; j < height; ++j)
    for (int i = 0; i < width; ++i) pts.push_back({static_cast<double>(i), static_cast<double>(j)});
  for (int j = 0; j < height; ++j)
    for (int i = 0; i < width; ++i) {
      int v = j * width + i;
      if (i + 1 < width) edges.push_back({v, v + 1});
      if (j + 1 < height) edges.push_back({v, v + width});
    }
  return from_drawing(pts, edges, weights);
}

EmbeddedGraph theta_graph(const std::vector<Rational>& weights) {
  GraphInput in;
  in.num_vertices = 2;
  // Arcs 0 (top), 1 (middle), 2 (bottom) from vertex 0 (left) to 1 (right).
  in.rotations = {{4, 2, 0}, {1, 3, 5}};
  in.weights = weights;
  in.outer_half_edge = 0;
  in.base_graph = false;
  return EmbeddedGraph(std::move(in));
}

EmbeddedGraph named_graph(const std::string& name) {
  if (name == "edge") return single_edge(Rational(1, 2));
  if (name == "p3") return path_graph(3, mixed_weights(2));
  if (name == "c3") return cycle_graph(3, mixed_weights(3));
  if (name == "c4") return cycle_graph(4, mixed_weights(4));
  if (name == "c5") return cycle_graph(5, mixed_weights(5));
  if (name == "c6") return cycle_graph(6, mixed_weights(6));
  if (name == "bowtie") return bowtie(mixed_weights(6));
  if (name == "k4") return k4(mixed_weights(6));
  if (name == "theta") return theta_graph(mixed_weights(3));
  if (name == "grid2x3") return grid_graph(2, 3, mixed_weights(7));
  if (name == "torus2") {
    auto g = torus_quotient(square_cell(Rational(1, 2)), 2);
    return with_weights(g, mixed_weights(g.num_edges()));
  }
  throw GraphError("unknown graph name '" + name + "'");
}

std::vector<std::string> suite_graph_names() {
  return {"edge", "p3", "c3", "c4", "c5", "bowtie", "k4", "theta", "torus2"};
}

}  // namespace rcd
