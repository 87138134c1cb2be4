#include "rcd/dimer_graph.hpp"

namespace rcd {

int DimerGraph::black_of(int e) const {
  int u = graph.origin(2 * e);
  return white[u] ? graph.origin(2 * e + 1) : u;
}

int DimerGraph::white_of(int e) const {
  int u = graph.origin(2 * e);
  return white[u] ? u : graph.origin(2 * e + 1);
}

DimerGraph to_dimer_graph(const DirectedGraphTriple& t) {
  const EmbeddedGraph& c = t.carrier;
  const int nd = static_cast<int>(t.edges.size());
  const int nz = c.num_vertices();

  DimerGraph dg;
  GraphInput in;
  in.topology = c.topology();
  in.base_graph = false;

  // Long edges keep the directed edge id; half-edge 2d sits at the tail.
  for (int d = 0; d < nd; ++d) {
    in.weights.push_back(t.edges[d].weight);
    dg.kind.push_back(DimerEdgeKind::long_edge);
    dg.directed_edge.push_back(d);
    dg.long_edge_of.push_back(d);
  }
  if (in.topology == Topology::torus) {
    in.shifts.resize(nd);
    for (int d = 0; d < nd; ++d) {
      const auto& de = t.edges[d];
      int carrier_edge = de.base_edge < 0 ? t.base.num_edges() : de.base_edge;
      in.shifts[d] = c.shift(2 * carrier_edge + de.tail_side);
    }
  }

  dg.cycle.assign(nz, {});
  dg.cycle_edges.assign(nz, {});
  dg.vertex_face_anchor.assign(nz, -1);
  for (int z = 0; z < nz; ++z) {
    const auto& ends = t.ends[z];
    const int k = static_cast<int>(ends.size());
    if (k == 0) continue;
    int start = 0;
    while (start < k && ends[(start + k - 1) % k].out == ends[start].out) ++start;
    if (start == k) throw GraphError("strand ends at a vertex all share one orientation");

    std::vector<std::vector<int>> runs;
    std::vector<char> run_out;
    for (int s = 0; s < k; ++s) {
      const EdgeEnd& end = ends[(start + s) % k];
      if (s == 0 || end.out != run_out.back()) {
        runs.emplace_back();
        run_out.push_back(end.out);
      }
      runs.back().push_back(2 * end.edge + (end.out ? 0 : 1));
    }

    const int R = static_cast<int>(runs.size());
    const int first_vertex = in.num_vertices;
    const int first_edge = static_cast<int>(in.weights.size());
    for (int i = 0; i < R; ++i) {
      in.weights.push_back(Rational(1));
      if (in.topology == Topology::torus) in.shifts.push_back(Shift{});
      dg.kind.push_back(DimerEdgeKind::short_edge);
      dg.directed_edge.push_back(-1);
      dg.cycle_edges[z].push_back(first_edge + i);
    }
    for (int i = 0; i < R; ++i) {
      std::vector<int> rot;
      rot.push_back(2 * (first_edge + i));                 // to the next cycle vertex
      rot.push_back(2 * (first_edge + (i + R - 1) % R) + 1);  // to the previous one
      rot.insert(rot.end(), runs[i].begin(), runs[i].end());
      in.rotations.push_back(std::move(rot));
      dg.white.push_back(run_out[i]);
      dg.base_vertex.push_back(z);
      dg.cycle[z].push_back(first_vertex + i);
    }
    in.num_vertices += R;
    dg.vertex_face_anchor[z] = 2 * first_edge;
  }

  dg.carrier_face_anchor.resize(c.num_faces());
  for (int f = 0; f < c.num_faces(); ++f) {
    const int h = c.face_boundary(f).front();
    const int d = t.strands_at(h).back();
    dg.carrier_face_anchor[f] = 2 * d + ((h & 1) == t.edges[d].tail_side ? 0 : 1);
  }
  if (in.topology == Topology::plane) in.outer_half_edge = dg.carrier_face_anchor[c.outer_face()];

  dg.graph = EmbeddedGraph(std::move(in));
  dg.original_edge.resize(dg.num_edges());
  for (int e = 0; e < dg.num_edges(); ++e) dg.original_edge[e] = e;
  if (t.dobrushin) dg.marked_edge = t.boundary_edge();
  return dg;
}

DimerGraph plain_dimer_graph(EmbeddedGraph g) {
  DimerGraph dg;
  const int n = g.num_vertices();
  std::vector<int> color(n, -1);
  for (int s = 0; s < n; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 1;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int h : g.rotation(v)) {
        int u = g.dest(h);
        if (color[u] < 0) {
          color[u] = 1 - color[v];
          stack.push_back(u);
        } else if (color[u] == color[v]) {
          throw GraphError("graph is not bipartite");
        }
      }
    }
  }
  dg.white.assign(color.begin(), color.end());
  dg.kind.assign(g.num_edges(), DimerEdgeKind::added);
  dg.directed_edge.assign(g.num_edges(), -1);
  dg.base_vertex.assign(n, -1);
  dg.original_edge.resize(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) dg.original_edge[e] = e;
  dg.graph = std::move(g);
  return dg;
}

void check_dimer_graph(const DimerGraph& dg) {
  const auto& g = dg.graph;
  for (int e = 0; e < g.num_edges(); ++e)
    if (dg.white[g.origin(2 * e)] == dg.white[g.origin(2 * e + 1)])
      throw GraphError("edge " + std::to_string(e) + " joins two vertices of one color");
  for (std::size_t z = 0; z < dg.cycle.size(); ++z)
    if (dg.cycle[z].size() % 2 != 0) throw GraphError("odd cycle at base vertex " + std::to_string(z));
  for (int e = 0; e < g.num_edges(); ++e)
    if (dg.kind[e] == DimerEdgeKind::long_edge && !dg.white[g.origin(2 * e)])
      throw GraphError("long edge " + std::to_string(e) + " does not start at a white vertex");
}

}  // namespace rcd
