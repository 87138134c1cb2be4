#pragma once

#include <vector>

#include "rcd/directed.hpp"

namespace rcd {

enum class DimerEdgeKind : unsigned char { short_edge, long_edge, added };

// Bipartite weighted graph carrying the dimer model, with back-maps to the
// graph it was built from. Faces are tracked through anchor half-edges (the
// tracked face is the one on the left of the anchor), which survive local
// moves.
struct DimerGraph {
  EmbeddedGraph graph;
  std::vector<char> white;            // per vertex
  std::vector<DimerEdgeKind> kind;    // per edge
  std::vector<int> directed_edge;     // per edge; -1 unless a long edge
  std::vector<int> long_edge_of;      // per directed edge; -1 once removed
  std::vector<int> base_vertex;       // per vertex; -1 for vertices added by moves
  std::vector<std::vector<int>> cycle;        // per base vertex, counterclockwise
  std::vector<std::vector<int>> cycle_edges;  // short edge from cycle[i] to cycle[i + 1]
  std::vector<int> carrier_face_anchor;       // per face of the carrier graph
  std::vector<int> vertex_face_anchor;        // per base vertex; -1 if isolated
  std::vector<int> original_edge;             // per edge; edge of the unmoved graph, -1 if added by a move
  int marked_edge = -1;
  // Z(original) = gauge * Z(this graph); moves update it.
  Rational gauge = 1;

  int num_vertices() const { return graph.num_vertices(); }
  int num_edges() const { return graph.num_edges(); }
  // Returns the black endpoint and white endpoint of an edge.
  int black_of(int e) const;
  int white_of(int e) const;
  int face_of_carrier_face(int f) const {
    return carrier_face_anchor[f] < 0 ? -1 : graph.face_of(carrier_face_anchor[f]);
  }
  int face_of_base_vertex(int z) const {
    return vertex_face_anchor[z] < 0 ? -1 : graph.face_of(vertex_face_anchor[z]);
  }
};

DimerGraph to_dimer_graph(const DirectedGraphTriple& t);

// Wraps a bipartite graph without back-maps; vertex 0 of each component is
// white. Throws GraphError if the graph is not bipartite.
DimerGraph plain_dimer_graph(EmbeddedGraph g);

// Checks bipartiteness, even cycles and color of long edge endpoints.
// Throws GraphError describing the first violation.
void check_dimer_graph(const DimerGraph& dg);

}  // namespace rcd
