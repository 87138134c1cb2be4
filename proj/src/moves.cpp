#include "rcd/moves.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

namespace rcd {

namespace {

// Mutable copy of a dimer graph. Half-edge ids stay stable until finish(),
// which drops removed elements and renumbers.
class Editor {
 public:
  explicit Editor(const DimerGraph& dg) : src_(dg) {
    const EmbeddedGraph& g = dg.graph;
    torus_ = g.topology() == Topology::torus;
    for (int v = 0; v < g.num_vertices(); ++v) {
      rot.push_back(g.rotation(v));
      vertex_alive.push_back(1);
    }
    white = dg.white;
    base_vertex = dg.base_vertex;
    for (int e = 0; e < g.num_edges(); ++e) {
      weight.push_back(g.weight(e));
      shift.push_back(torus_ ? g.edge_shifts()[e] : Shift{});
      origin.push_back(g.origin(2 * e));
      origin.push_back(g.origin(2 * e + 1));
      edge_alive.push_back(1);
    }
    kind = dg.kind;
    directed_edge = dg.directed_edge;
    original_edge = dg.original_edge;
    if (original_edge.empty())
      for (int e = 0; e < g.num_edges(); ++e) original_edge.push_back(e);
    anchors = dg.carrier_face_anchor;
    anchors.insert(anchors.end(), dg.vertex_face_anchor.begin(), dg.vertex_face_anchor.end());
    anchors.push_back(g.outer_face() >= 0 ? g.face_boundary(g.outer_face()).front() : -1);
    marked = dg.marked_edge;
    gauge = dg.gauge;
  }

  int add_vertex(bool is_white) {
    rot.emplace_back();
    vertex_alive.push_back(1);
    white.push_back(is_white);
    base_vertex.push_back(-1);
    return static_cast<int>(rot.size()) - 1;
  }

  int add_edge(int u, int v, const Rational& w, Shift s = {}) {
    weight.push_back(w);
    shift.push_back(s);
    origin.push_back(u);
    origin.push_back(v);
    edge_alive.push_back(1);
    kind.push_back(DimerEdgeKind::added);
    directed_edge.push_back(-1);
    original_edge.push_back(-1);
    return static_cast<int>(weight.size()) - 1;
  }

  int index_in(int v, int h) const {
    auto it = std::find(rot[v].begin(), rot[v].end(), h);
    if (it == rot[v].end()) throw std::logic_error("half-edge missing from rotation");
    return static_cast<int>(it - rot[v].begin());
  }
  int rot_prev(int h) const {
    const auto& r = rot[origin[h]];
    const int k = static_cast<int>(r.size());
    return r[(index_in(origin[h], h) + k - 1) % k];
  }
  int face_next(int h) const { return rot_prev(h ^ 1); }
  Shift half_shift(int h) const { return (h & 1) ? -shift[h >> 1] : shift[h >> 1]; }

  // Anchors on removed half-edges move along their face to a surviving one.
  void walk_anchors(const std::set<int>& removed) {
    for (int& a : anchors) {
      if (a < 0 || !removed.count(a)) continue;
      int h = face_next(a);
      while (removed.count(h) && h != a) h = face_next(h);
      a = h == a ? -1 : h;
    }
  }

  void kill_edge(int e) {
    for (int h : {2 * e, 2 * e + 1}) {
      auto& r = rot[origin[h]];
      r.erase(std::remove(r.begin(), r.end(), h), r.end());
    }
    edge_alive[e] = 0;
    if (e == marked) marked = -1;
  }

  DimerGraph finish() const {
    const int nv = static_cast<int>(rot.size());
    const int ne = static_cast<int>(weight.size());
    std::vector<int> vid(nv, -1), eid(ne, -1);
    int cv = 0, ce = 0;
    for (int v = 0; v < nv; ++v)
      if (vertex_alive[v]) vid[v] = cv++;
    for (int e = 0; e < ne; ++e)
      if (edge_alive[e]) eid[e] = ce++;
    auto hid = [&](int h) { return h < 0 || eid[h >> 1] < 0 ? -1 : 2 * eid[h >> 1] + (h & 1); };

    DimerGraph out;
    GraphInput in;
    in.topology = torus_ ? Topology::torus : Topology::plane;
    in.base_graph = false;
    in.num_vertices = cv;
    for (int v = 0; v < nv; ++v) {
      if (!vertex_alive[v]) continue;
      std::vector<int> r;
      for (int h : rot[v]) r.push_back(hid(h));
      in.rotations.push_back(std::move(r));
      out.white.push_back(white[v]);
      out.base_vertex.push_back(base_vertex[v]);
    }
    out.long_edge_of.assign(src_.long_edge_of.size(), -1);
    for (int e = 0; e < ne; ++e) {
      if (!edge_alive[e]) continue;
      in.weights.push_back(weight[e]);
      if (torus_) in.shifts.push_back(shift[e]);
      out.kind.push_back(kind[e]);
      out.directed_edge.push_back(directed_edge[e]);
      out.original_edge.push_back(original_edge[e]);
      if (directed_edge[e] >= 0) out.long_edge_of[directed_edge[e]] = eid[e];
    }
    const int nf = static_cast<int>(src_.carrier_face_anchor.size());
    for (int i = 0; i < nf; ++i) out.carrier_face_anchor.push_back(hid(anchors[i]));
    for (std::size_t i = 0; i < src_.vertex_face_anchor.size(); ++i)
      out.vertex_face_anchor.push_back(hid(anchors[nf + i]));
    if (!torus_) {
      const int outer = hid(anchors.back());
      if (outer < 0) throw std::logic_error("lost track of the unbounded face");
      in.outer_half_edge = outer;
    }
    out.graph = EmbeddedGraph(std::move(in));
    out.marked_edge = marked < 0 ? -1 : eid[marked];
    out.gauge = gauge;
    return out;
  }

  std::vector<std::vector<int>> rot;
  std::vector<char> vertex_alive, white;
  std::vector<int> base_vertex;
  std::vector<Rational> weight;
  std::vector<Shift> shift;
  std::vector<int> origin;  // per half-edge
  std::vector<char> edge_alive;
  std::vector<DimerEdgeKind> kind;
  std::vector<int> directed_edge, original_edge;
  std::vector<int> anchors;  // carrier faces, base vertices, then the unbounded face
  int marked = -1;
  Rational gauge;

 private:
  const DimerGraph& src_;
  bool torus_ = false;
};

}  // namespace

DimerGraph vertex_split(const DimerGraph& dg, int v, const std::vector<int>& arc) {
  const EmbeddedGraph& g = dg.graph;
  if (v < 0 || v >= g.num_vertices()) throw std::invalid_argument("vertex out of range");
  const auto& r = g.rotation(v);
  const int k = static_cast<int>(r.size());
  std::vector<char> in_arc(k, 0);
  for (int h : arc) {
    if (h < 0 || h >= g.num_half_edges() || g.origin(h) != v) throw std::invalid_argument("arc half-edge does not leave the vertex");
    in_arc[g.rotation_index(h)] = 1;
  }
  const int na = static_cast<int>(std::count(in_arc.begin(), in_arc.end(), 1));
  if (na == 0 || na == k) throw std::invalid_argument("both parts of a vertex split must be nonempty");
  int starts = 0, first = -1;
  for (int i = 0; i < k; ++i)
    if (in_arc[i] && !in_arc[(i + k - 1) % k]) {
      ++starts;
      first = i;
    }
  if (starts != 1) throw std::invalid_argument("vertex split arc is not contiguous");

  Editor ed(dg);
  std::vector<int> a, b;
  for (int s = 0; s < k; ++s) {
    int h = r[(first + s) % k];
    (s < na ? a : b).push_back(h);
  }
  const int n = ed.add_vertex(!dg.white[v]);
  const int v2 = ed.add_vertex(dg.white[v]);
  ed.base_vertex[v2] = dg.base_vertex[v];
  const int e1 = ed.add_edge(v, n, Rational(1));
  const int e2 = ed.add_edge(n, v2, Rational(1));
  a.push_back(2 * e1);
  b.push_back(2 * e2 + 1);
  for (int h : b) ed.origin[h] = v2;
  ed.rot[v] = a;
  ed.rot[v2] = b;
  ed.rot[n] = {2 * e1 + 1, 2 * e2};
  return ed.finish();
}

DimerGraph urban_renewal(const DimerGraph& dg, int h) {
  const EmbeddedGraph& g = dg.graph;
  if (h < 0 || h >= g.num_half_edges()) throw std::invalid_argument("half-edge out of range");
  std::vector<int> q{h};
  while (q.size() < 5 && g.face_next(q.back()) != h) q.push_back(g.face_next(q.back()));
  if (q.size() != 4) throw std::invalid_argument("face is not a quadrilateral");
  std::set<int> corners, edges;
  for (int x : q) {
    corners.insert(g.origin(x));
    edges.insert(EmbeddedGraph::edge_of(x));
  }
  if (corners.size() != 4 || edges.size() != 4) throw std::invalid_argument("quadrilateral is degenerate");
  if (edges.count(dg.marked_edge)) throw std::invalid_argument("the marked edge cannot be renewed");

  Editor ed(dg);
  Rational x[4];
  int p[4], qv[4], spoke[4], inner[4];
  for (int i = 0; i < 4; ++i) {
    x[i] = g.weight(EmbeddedGraph::edge_of(q[i]));
    p[i] = g.origin(q[i]);
  }
  const Rational d = x[0] * x[2] + x[1] * x[3];
  for (int i = 0; i < 4; ++i) {
    qv[i] = ed.add_vertex(!dg.white[p[i]]);
    spoke[i] = ed.add_edge(p[i], qv[i], Rational(1));
    auto& r = ed.rot[p[i]];
    r.insert(r.begin() + ed.index_in(p[i], q[i]) + 1, 2 * spoke[i]);
  }
  for (int i = 0; i < 4; ++i)
    inner[i] = ed.add_edge(qv[i], qv[(i + 1) % 4], x[(i + 2) % 4] / d, ed.half_shift(q[i]));
  for (int i = 0; i < 4; ++i) ed.rot[qv[i]] = {2 * inner[i], 2 * inner[(i + 3) % 4] + 1, 2 * spoke[i] + 1};
  for (int& a : ed.anchors)
    for (int i = 0; i < 4; ++i) {
      if (a == q[i]) {
        a = 2 * inner[i];
        break;
      }
      if (a == (q[i] ^ 1)) {
        a = 2 * inner[i] + 1;
        break;
      }
    }
  for (int x0 : q) ed.kill_edge(EmbeddedGraph::edge_of(x0));
  ed.gauge *= d;
  return ed.finish();
}

DimerGraph contract_vertex(const DimerGraph& dg, int v) {
  const EmbeddedGraph& g = dg.graph;
  if (v < 0 || v >= g.num_vertices() || g.degree(v) != 2) throw std::invalid_argument("vertex does not have degree 2");
  const int ha = g.rotation(v)[0], hb = g.rotation(v)[1];
  const int u = g.dest(ha), w = g.dest(hb);
  if (u == w) throw std::invalid_argument("both edges of the vertex lead to one neighbour");
  const int ea = EmbeddedGraph::edge_of(ha), eb = EmbeddedGraph::edge_of(hb);

  Editor ed(dg);
  ed.walk_anchors({ha, ha ^ 1, hb, hb ^ 1});
  const Rational wa = g.weight(ea), wb = g.weight(eb);
  for (int h : g.rotation(u))
    if (h != (ha ^ 1)) ed.weight[h >> 1] *= wb;
  for (int h : g.rotation(w))
    if (h != (hb ^ 1)) ed.weight[h >> 1] *= wa;

  const Shift s = [&] {
    Shift t = ed.half_shift(ha ^ 1);
    t += ed.half_shift(hb);
    return t;
  }();
  std::vector<int> moved;
  const auto& rw = g.rotation(w);
  const int kw = static_cast<int>(rw.size());
  const int iw = g.rotation_index(hb ^ 1);
  for (int j = 1; j < kw; ++j) moved.push_back(rw[(iw + j) % kw]);
  for (int h : moved) {
    ed.origin[h] = u;
    if (h & 1)
      ed.shift[h >> 1] += -s;
    else
      ed.shift[h >> 1] += s;
  }
  auto& ru = ed.rot[u];
  const int iu = ed.index_in(u, ha ^ 1);
  ru.erase(ru.begin() + iu);
  ru.insert(ru.begin() + iu, moved.begin(), moved.end());
  ed.rot[w].clear();
  ed.rot[v].clear();
  ed.edge_alive[ea] = ed.edge_alive[eb] = 0;
  if (ea == ed.marked || eb == ed.marked) throw std::invalid_argument("the marked edge cannot be contracted");
  ed.vertex_alive[v] = ed.vertex_alive[w] = 0;
  if (ed.base_vertex[u] < 0) ed.base_vertex[u] = dg.base_vertex[w];
  return ed.finish();
}

DimerGraph merge_parallel(const DimerGraph& dg, int face) {
  const EmbeddedGraph& g = dg.graph;
  if (face < 0 || face >= g.num_faces()) throw std::invalid_argument("face out of range");
  const auto& b = g.face_boundary(face);
  if (b.size() != 2 || EmbeddedGraph::edge_of(b[0]) == EmbeddedGraph::edge_of(b[1]))
    throw std::invalid_argument("face is not a 2-gon");
  const int i = EmbeddedGraph::edge_of(b[1]) == dg.marked_edge ? 1 : 0;
  const int keep = b[i], drop = b[1 - i];
  Editor ed(dg);
  ed.weight[keep >> 1] += g.weight(drop >> 1);
  for (int& a : ed.anchors) {
    if (a == keep || a == drop) a = -1;
    else if (a == (drop ^ 1)) a = keep;
  }
  ed.kill_edge(drop >> 1);
  return ed.finish();
}

Rational face_weight(const DimerGraph& dg, int face) {
  Rational num = 1, den = 1;
  for (int h : dg.graph.face_boundary(face)) {
    const Rational& w = dg.graph.weight(EmbeddedGraph::edge_of(h));
    if (dg.white[dg.graph.origin(h)])
      num *= w;
    else
      den *= w;
  }
  return num / den;
}

namespace {

int current_edge(const DimerGraph& dg, int original) {
  for (int e = 0; e < dg.num_edges(); ++e)
    if (dg.original_edge[e] == original) return e;
  return -1;
}

bool anchored(const DimerGraph& dg, int f) {
  if (f == dg.graph.outer_face()) return true;
  for (int i = 0; i < static_cast<int>(dg.carrier_face_anchor.size()); ++i)
    if (dg.face_of_carrier_face(i) == f) return true;
  for (int i = 0; i < static_cast<int>(dg.vertex_face_anchor.size()); ++i)
    if (dg.face_of_base_vertex(i) == f) return true;
  return false;
}

// Contracts the corners left with degree 2, then collapses the doubled
// edges: 2-gons with an added edge that are not faces of G.
DimerGraph clean_up(DimerGraph dg, std::vector<int> corners) {
  while (!corners.empty()) {
    const int v = corners.back();
    corners.pop_back();
    const auto& r = dg.graph.rotation(v);
    if (r.size() != 2 || dg.graph.dest(r[0]) == dg.graph.dest(r[1])) continue;
    const int u = dg.graph.dest(r[0]), w = dg.graph.dest(r[1]);
    dg = contract_vertex(dg, v);
    for (int& c : corners) {
      if (c == w) c = u;
      c -= (c > v) + (c > w);
    }
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (int f = 0; f < dg.graph.num_faces() && !changed; ++f) {
      const auto& b = dg.graph.face_boundary(f);
      if (b.size() != 2) continue;
      const int e0 = EmbeddedGraph::edge_of(b[0]), e1 = EmbeddedGraph::edge_of(b[1]);
      if (e0 == e1 || (dg.original_edge[e0] >= 0 && dg.original_edge[e1] >= 0) || anchored(dg, f)) continue;
      dg = merge_parallel(dg, f);
      changed = true;
    }
  }
  return dg;
}

}  // namespace

namespace {

bool shared_corner(const DimerGraph& dg, const DirectedGraphTriple& t, int v, int e) {
  for (int x : dg.graph.rotation(v)) {
    const int k = EmbeddedGraph::edge_of(x), d = dg.directed_edge[k];
    if (dg.original_edge[k] < 0 || (d >= 0 && t.edges[d].base_edge != e)) return true;
  }
  return false;
}

// A vertex made of added edges only must already have its final degree 3.
bool settled(const DimerGraph& dg) {
  for (int v = 0; v < dg.num_vertices(); ++v) {
    const auto& r = dg.graph.rotation(v);
    if (r.size() == 3) continue;
    if (std::all_of(r.begin(), r.end(), [&](int x) { return dg.original_edge[EmbeddedGraph::edge_of(x)] < 0; }))
      return false;
  }
  return true;
}

// Splits the shared corners of the quadrilateral left of h, renews it and
// cleans up.
DimerGraph renew_edge_quad(DimerGraph cur, const DirectedGraphTriple& t, int e, int h) {
  std::vector<int> q{h};
  for (int i = 1; i < 4; ++i) q.push_back(cur.graph.face_next(q.back()));
  // Splits keep all existing ids, so q stays valid.
  for (int i = 0; i < 4; ++i) {
    const int v = cur.graph.origin(q[i]);
    if (shared_corner(cur, t, v, e)) cur = vertex_split(cur, v, {q[i], q[(i + 3) % 4] ^ 1});
  }
  std::vector<int> corners;
  for (int x : q) corners.push_back(cur.graph.origin(x));
  std::sort(corners.begin(), corners.end());
  return clean_up(urban_renewal(cur, h), corners);
}

int quad_between(const DimerGraph& dg, int a, int b) {
  if (a < 0 || b < 0) return -1;
  for (int side : {0, 1}) {
    const auto& bd = dg.graph.face_boundary(dg.graph.face_of(2 * a + side));
    if (bd.size() == 4 && std::any_of(bd.begin(), bd.end(), [&](int x) { return EmbeddedGraph::edge_of(x) == b; }))
      return 2 * a + side;
  }
  return -1;
}

}  // namespace

DimerGraph to_cg(const DimerGraph& dg, const DirectedGraphTriple& t) {
  if (dg.graph.topology() != Topology::plane) throw std::domain_error("to_cg is implemented on the plane only");
  DimerGraph cur = dg;
  for (int e = 0; e < t.base.num_edges(); ++e) {
    auto strand = [&](StrandRole r) { return current_edge(cur, dg.long_edge_of[t.strand(e, r)]); };
    const int mid = strand(StrandRole::m);
    std::optional<DimerGraph> fallback;
    bool done = false;
    for (StrandRole side : {StrandRole::s1, StrandRole::s2}) {
      const int h = quad_between(cur, strand(side), mid);
      if (h < 0) continue;
      DimerGraph next = renew_edge_quad(cur, t, e, h);
      if (settled(next)) {
        cur = std::move(next);
        done = true;
        break;
      }
      if (!fallback) fallback = std::move(next);
    }
    if (!done) {
      if (!fallback) throw std::logic_error("no quadrilateral next to the middle strand");
      cur = std::move(*fallback);
    }
  }
  cur.cycle.clear();
  cur.cycle_edges.clear();
  return cur;
}

}  // namespace rcd
