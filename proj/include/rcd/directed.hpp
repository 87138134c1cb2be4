#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "rcd/embedded_graph.hpp"

namespace rcd {

// s1, m, s2 are the three parallel strands replacing a base edge; boundary
// is the single extra edge e_(a,b) of a Dobrushin augmentation.
enum class StrandRole : unsigned char { s1 = 0, m = 1, s2 = 2, boundary = 3 };

struct DirectedEdge {
  int base_edge = -1;  // -1 for the boundary edge
  StrandRole role = StrandRole::s1;
  int tail = -1;
  int head = -1;
  int tail_side = 0;  // side of the carrier edge whose origin is the tail
  Rational weight;
};

struct EdgeEnd {
  int edge = -1;  // directed edge id
  bool out = false;
};

// True when the middle strand of base edge e runs from origin(2e) to
// origin(2e + 1).
using MiddleOrientationRule = std::function<bool(const EmbeddedGraph&, int)>;

// Default: the middle strand points from the lower to the higher vertex id.
bool middle_low_to_high(const EmbeddedGraph& g, int e);
MiddleOrientationRule reversed(MiddleOrientationRule rule);

// The graph G-> (optionally augmented by e_(a,b)). Directed edge 3e + k is
// strand k of base edge e; the boundary edge, when present, is last.
struct DirectedGraphTriple {
  EmbeddedGraph base;
  // Base graph, or base plus e_(a,b) as carrier edge base.num_edges(). Its
  // rotation system orders the strands around each vertex.
  EmbeddedGraph carrier;
  std::vector<char> middle_forward;  // per base edge
  std::vector<DirectedEdge> edges;
  std::vector<std::vector<EdgeEnd>> ends;  // per vertex, counterclockwise
  std::optional<std::pair<int, int>> dobrushin;

  int num_base_edges() const { return base.num_edges(); }
  int strand(int base_edge, StrandRole role) const { return 3 * base_edge + static_cast<int>(role); }
  int boundary_edge() const { return dobrushin ? 3 * base.num_edges() : -1; }
  // Strands of carrier half-edge h in counterclockwise order at origin(h).
  std::vector<int> strands_at(int carrier_half_edge) const;
};

// Middle weight 2x / (1 - x^2).
Rational middle_weight(const Rational& x);

DirectedGraphTriple to_directed(const EmbeddedGraph& g, const MiddleOrientationRule& rule = middle_low_to_high);

// Number of cyclically consecutive pairs of equally oriented strand ends at z.
int r_of(int z, const DirectedGraphTriple& t);

// Adds e_(a,b), directed from b to a, inside the unbounded face so that the
// clockwise boundary arc from a to b borders the new unbounded face.
DirectedGraphTriple augment_dobrushin(const DirectedGraphTriple& t, int a, int b);

// Half-edges of the unbounded face walk (clockwise), starting at the first
// half-edge leaving `from`, up to (excluding) the first one leaving `to`.
std::vector<int> clockwise_boundary_arc(const EmbeddedGraph& g, int from, int to);

}  // namespace rcd
