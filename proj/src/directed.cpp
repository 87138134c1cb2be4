#include "rcd/directed.hpp"

#include <algorithm>

namespace rcd {

bool middle_low_to_high(const EmbeddedGraph& g, int e) {
  return g.origin(2 * e) <= g.origin(2 * e + 1);
}

MiddleOrientationRule reversed(MiddleOrientationRule rule) {
  return [rule = std::move(rule)](const EmbeddedGraph& g, int e) { return !rule(g, e); };
}

Rational middle_weight(const Rational& x) {
  Rational y = 2 * x / (1 - x * x);
  y.canonicalize();
  return y;
}

namespace {

void assemble(DirectedGraphTriple& t) {
  const EmbeddedGraph& g = t.base;
  const int m = g.num_edges();
  t.edges.clear();
  for (int e = 0; e < m; ++e) {
    const int u = g.origin(2 * e), v = g.origin(2 * e + 1);
    const bool fwd = t.middle_forward[e];
    for (int k = 0; k < 3; ++k) {
      DirectedEdge d;
      d.base_edge = e;
      d.role = static_cast<StrandRole>(k);
      // Sides run against the middle strand.
      const bool forward = (k == 1) ? fwd : !fwd;
      d.tail = forward ? u : v;
      d.head = forward ? v : u;
      d.tail_side = forward ? 0 : 1;
      d.weight = (k == 1) ? middle_weight(g.weight(e)) : g.weight(e);
      t.edges.push_back(d);
    }
  }
  if (t.dobrushin) {
    auto [a, b] = *t.dobrushin;
    DirectedEdge d;
    d.role = StrandRole::boundary;
    d.tail = b;
    d.head = a;
    d.tail_side = 0;  // carrier half-edge 2m starts at b
    d.weight = 1;
    t.edges.push_back(d);
  }

  const EmbeddedGraph& c = t.carrier;
  t.ends.assign(c.num_vertices(), {});
  for (int z = 0; z < c.num_vertices(); ++z)
    for (int h : c.rotation(z))
      for (int d : t.strands_at(h)) {
        const int side = h & 1;
        t.ends[z].push_back({d, side == t.edges[d].tail_side});
      }
}

}  // namespace

std::vector<int> DirectedGraphTriple::strands_at(int h) const {
  const int e = EmbeddedGraph::edge_of(h);
  if (e == base.num_edges()) return {boundary_edge()};
  if ((h & 1) == 0) return {3 * e, 3 * e + 1, 3 * e + 2};
  return {3 * e + 2, 3 * e + 1, 3 * e};
}

DirectedGraphTriple to_directed(const EmbeddedGraph& g, const MiddleOrientationRule& rule) {
  DirectedGraphTriple t;
  t.base = g;
  t.carrier = g;
  t.middle_forward.resize(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) t.middle_forward[e] = rule(g, e) ? 1 : 0;
  assemble(t);
  return t;
}

int r_of(int z, const DirectedGraphTriple& t) {
  const auto& ends = t.ends[z];
  const int k = static_cast<int>(ends.size());
  int r = 0;
  for (int i = 0; i < k; ++i)
    if (ends[i].out == ends[(i + 1) % k].out) ++r;
  return r;
}

std::vector<int> clockwise_boundary_arc(const EmbeddedGraph& g, int from, int to) {
  if (g.outer_face() < 0) throw GraphError("boundary arcs need a plane graph");
  const auto& walk = g.face_boundary(g.outer_face());
  const int k = static_cast<int>(walk.size());
  int start = -1;
  for (int i = 0; i < k; ++i)
    if (g.origin(walk[i]) == from) {
      start = i;
      break;
    }
  if (start < 0) throw GraphError("vertex " + std::to_string(from) + " is not on the outer face");
  std::vector<int> arc;
  for (int s = 0; s < k; ++s) {
    int h = walk[(start + s) % k];
    if (g.origin(h) == to) return arc;
    arc.push_back(h);
  }
  throw GraphError("vertex " + std::to_string(to) + " is not on the outer face");
}

DirectedGraphTriple augment_dobrushin(const DirectedGraphTriple& t, int a, int b) {
  if (t.dobrushin) throw GraphError("graph is already augmented");
  if (a == b) throw GraphError("Dobrushin sources must be distinct");
  const EmbeddedGraph& g = t.base;
  if (g.topology() != Topology::plane) throw GraphError("Dobrushin augmentation needs a plane graph");
  if (a < 0 || b < 0 || a >= g.num_vertices() || b >= g.num_vertices())
    throw GraphError("Dobrushin source out of range");

  const auto& walk = g.face_boundary(g.outer_face());
  const int k = static_cast<int>(walk.size());
  auto arc = clockwise_boundary_arc(g, a, b);
  if (arc.empty()) throw GraphError("degenerate boundary arc");
  // Positions in the walk of g_out (leaving a) and h_out (leaving b).
  const int i_a = static_cast<int>(std::find(walk.begin(), walk.end(), arc.front()) - walk.begin());
  const int i_b = (i_a + static_cast<int>(arc.size())) % k;
  const int g_out = walk[i_a];
  const int h_in = walk[(i_b + k - 1) % k];

  GraphInput in = g.to_input();
  const int m = g.num_edges();
  const int t_half = 2 * m;      // b -> a
  const int t_twin = 2 * m + 1;  // a -> b
  {
    auto& rot = in.rotations[b];
    auto it = std::find(rot.begin(), rot.end(), EmbeddedGraph::twin(h_in));
    rot.insert(it, t_half);
  }
  {
    auto& rot = in.rotations[a];
    auto it = std::find(rot.begin(), rot.end(), g_out);
    rot.insert(it + 1, t_twin);
  }
  in.weights.push_back(Rational(1));
  in.base_graph = false;
  in.outer_half_edge = t_half;

  DirectedGraphTriple out;
  out.base = g;
  out.carrier = EmbeddedGraph(std::move(in));
  out.middle_forward = t.middle_forward;
  out.dobrushin = std::make_pair(a, b);
  assemble(out);
  return out;
}

}  // namespace rcd
