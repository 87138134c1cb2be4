#include "rcd/embedded_graph.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace rcd {

EmbeddedGraph::EmbeddedGraph(GraphInput input) {
  validate(input);
  topology_ = input.topology;
  base_graph_ = input.base_graph;
  const int n = input.num_vertices;
  const int m = static_cast<int>(input.weights.size());
  weights_ = std::move(input.weights);
  for (auto& w : weights_) w.canonicalize();
  shifts_ = input.shifts.empty() ? std::vector<Shift>(m) : std::move(input.shifts);
  if (topology_ == Topology::plane)
    for (auto s : shifts_)
      if (s != Shift{}) throw GraphError("nonzero torus shift on a plane graph");

  rotations_.resize(n);
  first_.assign(n, -1);
  origin_.assign(2 * m, -1);
  rot_next_.assign(2 * m, -1);
  rot_prev_.assign(2 * m, -1);
  rotation_index_.assign(2 * m, -1);
  for (int v = 0; v < n; ++v) {
    auto rot = input.rotations[v];
    if (!rot.empty()) std::rotate(rot.begin(), std::min_element(rot.begin(), rot.end()), rot.end());
    rotations_[v] = rot;
    const int d = static_cast<int>(rot.size());
    for (int i = 0; i < d; ++i) {
      origin_[rot[i]] = v;
      rot_next_[rot[i]] = rot[(i + 1) % d];
      rot_prev_[rot[i]] = rot[(i + d - 1) % d];
      rotation_index_[rot[i]] = i;
    }
    if (d > 0) first_[v] = rot[0];
  }

  if (base_graph_ && !is_simple()) throw GraphError("base graph must be simple (no loops or parallel edges)");

  trace_faces();

  const int expected = topology_ == Topology::plane ? 2 : 0;
  if (m > 0 && euler_characteristic() != expected)
    throw GraphError("Euler characteristic " + std::to_string(euler_characteristic()) +
                     " does not match declared topology");
  if (topology_ == Topology::torus && num_isolated_vertices() > 0)
    throw GraphError("isolated vertices are not supported on the torus");

  if (topology_ == Topology::torus) {
    for (int f = 0; f < num_faces(); ++f) {
      Shift total;
      for (int h : faces_[f]) total += shift(h);
      if (total != Shift{}) throw GraphError("inconsistent torus identifications around a face");
    }
  } else if (m > 0) {
    int oh = input.outer_half_edge.value_or(-1);
    if (oh < 0 || oh >= 2 * m) throw GraphError("plane graph needs a valid outer half-edge");
    outer_face_ = face_of_[oh];
  }
}

void EmbeddedGraph::validate(const GraphInput& input) const {
  const int n = input.num_vertices;
  const int m = static_cast<int>(input.weights.size());
  if (n < 0 || static_cast<int>(input.rotations.size()) != n)
    throw GraphError("rotation list count does not match vertex count");
  if (!input.shifts.empty() && static_cast<int>(input.shifts.size()) != m)
    throw GraphError("shift count does not match edge count");
  std::vector<int> seen(2 * m, 0);
  for (const auto& rot : input.rotations)
    for (int h : rot) {
      if (h < 0 || h >= 2 * m) throw GraphError("rotation system references unknown half-edge");
      if (seen[h]++) throw GraphError("half-edge appears twice in the rotation system");
    }
  for (int h = 0; h < 2 * m; ++h)
    if (!seen[h]) throw GraphError("rotation system omits half-edge " + std::to_string(h));
  for (const auto& w : input.weights) {
    if (w <= 0) throw GraphError("edge weight must be positive");
    if (input.base_graph && w >= 1) throw GraphError("base edge weight must lie in (0,1)");
  }
}

void EmbeddedGraph::trace_faces() {
  const int hn = num_half_edges();
  face_of_.assign(hn, -1);
  faces_.clear();
  for (int start = 0; start < hn; ++start) {
    if (face_of_[start] != -1) continue;
    const int f = static_cast<int>(faces_.size());
    faces_.emplace_back();
    int h = start;
    do {
      face_of_[h] = f;
      faces_[f].push_back(h);
      h = face_next(h);
    } while (h != start);
  }
}

int EmbeddedGraph::num_isolated_vertices() const {
  return static_cast<int>(std::count_if(rotations_.begin(), rotations_.end(),
                                        [](const auto& r) { return r.empty(); }));
}

int EmbeddedGraph::euler_characteristic() const {
  return num_vertices() - num_isolated_vertices() - num_edges() + num_faces();
}

bool EmbeddedGraph::is_simple() const {
  std::set<std::pair<int, int>> pairs;
  for (int e = 0; e < num_edges(); ++e) {
    int u = origin(2 * e), v = origin(2 * e + 1);
    if (u == v) return false;
    if (!pairs.insert({std::min(u, v), std::max(u, v)}).second) return false;
  }
  return true;
}

GraphInput EmbeddedGraph::to_input() const {
  GraphInput in;
  in.topology = topology_;
  in.num_vertices = num_vertices();
  in.rotations = rotations_;
  in.weights = weights_;
  if (topology_ == Topology::torus) in.shifts = shifts_;
  if (outer_face_ >= 0) in.outer_half_edge = faces_[outer_face_].front();
  in.base_graph = base_graph_;
  return in;
}

EmbeddedGraph dual(const EmbeddedGraph& g) {
  GraphInput in;
  in.topology = g.topology();
  in.num_vertices = g.num_faces();
  in.rotations.resize(g.num_faces());
  in.weights = g.weights();
  in.base_graph = false;
  // Dual half-edge h* shares the id of h; the order around a dual vertex is
  // the boundary order of its face.
  for (int f = 0; f < g.num_faces(); ++f) in.rotations[f] = g.face_boundary(f);
  if (g.outer_face() >= 0 && g.num_vertices() > 0) {
    // The dual's outer face corresponds to any vertex; use the origin of
    // half-edge 0, whose dual face is traced through twin(0)*.
    in.outer_half_edge = 1;
  }
  return EmbeddedGraph(std::move(in));
}

FacePath face_path_from_crossings(const EmbeddedGraph& g, int start_face, const std::vector<int>& crossed) {
  FacePath p;
  p.faces.push_back(start_face);
  for (int h : crossed) {
    if (g.face_of(h) != p.faces.back()) throw GraphError("crossed half-edge does not border the current face");
    p.crossed.push_back(h);
    p.faces.push_back(g.face_of(EmbeddedGraph::twin(h)));
  }
  return p;
}

FacePath shortest_face_path(const EmbeddedGraph& g, int from_face, int to_face) {
  std::vector<int> via(g.num_faces(), -2);
  std::queue<int> q;
  via[from_face] = -1;
  q.push(from_face);
  while (!q.empty()) {
    int f = q.front();
    q.pop();
    if (f == to_face) break;
    std::vector<int> hs = g.face_boundary(f);
    std::sort(hs.begin(), hs.end());
    for (int h : hs) {
      int nf = g.face_of(EmbeddedGraph::twin(h));
      if (via[nf] != -2) continue;
      via[nf] = h;
      q.push(nf);
    }
  }
  if (via[to_face] == -2) throw GraphError("faces are not connected in the dual");
  std::vector<int> crossed;
  for (int f = to_face; f != from_face;) {
    int h = via[f];
    crossed.push_back(h);
    f = g.face_of(h);
  }
  std::reverse(crossed.begin(), crossed.end());
  return face_path_from_crossings(g, from_face, crossed);
}

void validate_face_path(const EmbeddedGraph& g, const FacePath& path) {
  if (path.faces.size() != path.crossed.size() + 1) throw GraphError("face path length mismatch");
  for (std::size_t i = 0; i < path.crossed.size(); ++i) {
    int h = path.crossed[i];
    if (g.face_of(h) != path.faces[i] || g.face_of(EmbeddedGraph::twin(h)) != path.faces[i + 1])
      throw GraphError("consecutive faces of the path are not adjacent across the crossed edge");
  }
}

}  // namespace rcd
