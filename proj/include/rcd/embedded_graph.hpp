#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcd/rational.hpp"

namespace rcd {

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Topology { plane, torus };

// Number of times a half-edge crosses the two homology cuts of a torus,
// counted with sign. Always zero on the plane.
struct Shift {
  int dx = 0;
  int dy = 0;
  Shift operator-() const { return {-dx, -dy}; }
  Shift& operator+=(Shift o) {
    dx += o.dx;
    dy += o.dy;
    return *this;
  }
  friend bool operator==(Shift, Shift) = default;
};

// Construction input. Edge e owns half-edges 2e and 2e+1; half-edge 2e
// starts at the vertex whose rotation list contains it. Rotation lists are
// counterclockwise.
struct GraphInput {
  Topology topology = Topology::plane;
  int num_vertices = 0;
  std::vector<std::vector<int>> rotations;
  std::vector<Rational> weights;
  std::vector<Shift> shifts;          // torus only; empty means all zero
  std::optional<int> outer_half_edge; // plane: its left face is unbounded
  bool base_graph = true;             // require a simple graph with 0 < x_e < 1
};

// Combinatorial map with per-edge weights. Faces are traced with the face on
// the left of each half-edge, so bounded faces run counterclockwise and the
// unbounded face clockwise. Immutable after construction.
class EmbeddedGraph {
 public:
  EmbeddedGraph() = default;
  explicit EmbeddedGraph(GraphInput input);

  Topology topology() const { return topology_; }
  bool is_base_graph() const { return base_graph_; }
  int num_vertices() const { return static_cast<int>(first_.size()); }
  int num_edges() const { return static_cast<int>(weights_.size()); }
  int num_half_edges() const { return 2 * num_edges(); }
  int num_faces() const { return static_cast<int>(faces_.size()); }

  static int twin(int h) { return h ^ 1; }
  static int edge_of(int h) { return h >> 1; }
  static int half_edge(int e, int side) { return 2 * e + side; }

  int origin(int h) const { return origin_[h]; }
  int dest(int h) const { return origin_[twin(h)]; }
  int rot_next(int h) const { return rot_next_[h]; }
  int rot_prev(int h) const { return rot_prev_[h]; }
  int face_next(int h) const { return rot_prev_[twin(h)]; }
  int degree(int v) const { return static_cast<int>(rotations_[v].size()); }

  // Counterclockwise half-edges leaving v.
  const std::vector<int>& rotation(int v) const { return rotations_[v]; }
  // Position of h in rotation(origin(h)).
  int rotation_index(int h) const { return rotation_index_[h]; }

  const Rational& weight(int e) const { return weights_[e]; }
  const std::vector<Rational>& weights() const { return weights_; }
  Shift shift(int h) const { return (h & 1) ? -shifts_[edge_of(h)] : shifts_[edge_of(h)]; }
  const std::vector<Shift>& edge_shifts() const { return shifts_; }

  int face_of(int h) const { return face_of_[h]; }
  const std::vector<int>& face_boundary(int f) const { return faces_[f]; }
  // -1 on the torus or for an edgeless graph.
  int outer_face() const { return outer_face_; }

  int num_isolated_vertices() const;
  int euler_characteristic() const;
  bool is_simple() const;

  // The input this graph was built from (rotation lists normalized to start
  // at the smallest half-edge id).
  GraphInput to_input() const;

 private:
  void trace_faces();
  void validate(const GraphInput& input) const;

  Topology topology_ = Topology::plane;
  bool base_graph_ = true;
  std::vector<std::vector<int>> rotations_;
  std::vector<int> first_;
  std::vector<int> origin_, rot_next_, rot_prev_, rotation_index_;
  std::vector<Rational> weights_;
  std::vector<Shift> shifts_;
  std::vector<int> face_of_;
  std::vector<std::vector<int>> faces_;
  int outer_face_ = -1;
};

// Geometric dual: a vertex per face, dual half-edge h* runs from face_of(h)
// to face_of(twin(h)) and carries the weight of edge_of(h).
EmbeddedGraph dual(const EmbeddedGraph& g);

// Sequence of adjacent faces; crossed[i] is the half-edge whose left face is
// faces[i] and whose right face is faces[i + 1].
struct FacePath {
  std::vector<int> faces;
  std::vector<int> crossed;
};

FacePath face_path_from_crossings(const EmbeddedGraph& g, int start_face, const std::vector<int>& crossed);
// Breadth-first shortest path in the dual, ties broken by half-edge id.
FacePath shortest_face_path(const EmbeddedGraph& g, int from_face, int to_face);
void validate_face_path(const EmbeddedGraph& g, const FacePath& path);

}  // namespace rcd
