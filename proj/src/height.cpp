#include "rcd/height.hpp"

#include <deque>
#include <functional>
#include <stdexcept>

namespace rcd {

namespace {

void require_plane(const EmbeddedGraph& g) {
  if (g.topology() != Topology::plane) throw std::domain_error("face fields are defined on the plane only");
}

// Walks the dual from `start`, setting value[right] = value[left] + step(h)
// and checking every other edge for consistency.
template <class T, class Step, class Combine = std::plus<T>>
std::vector<T> integrate(const EmbeddedGraph& g, int start, Step step, Combine combine = {}) {
  std::vector<T> value(g.num_faces());
  std::vector<char> seen(g.num_faces(), 0);
  seen[start] = 1;
  std::deque<int> queue{start};
  while (!queue.empty()) {
    int f = queue.front();
    queue.pop_front();
    for (int h : g.face_boundary(f)) {
      int r = g.face_of(EmbeddedGraph::twin(h));
      T v = combine(value[f], step(h));
      if (!seen[r]) {
        seen[r] = 1;
        value[r] = v;
        queue.push_back(r);
      } else if (value[r] != v) {
        throw std::logic_error("flux is not path independent");
      }
    }
  }
  return value;
}

std::vector<char> membership(const DimerGraph& dg, const DimerCover& m) {
  std::vector<char> in(dg.num_edges(), 0);
  for (int e : m.edges) in[e] = 1;
  return in;
}

// Flux of f_M - f0 across carrier half-edge h from its left to its right,
// through the long edges of its strands.
template <class Present>
int strand_step(const DirectedGraphTriple& t, int h, Present present) {
  int s = 0;
  for (int d : t.strands_at(h)) {
    int along = (h & 1) == t.edges[d].tail_side ? 1 : -1;
    s -= present(d) * along;
  }
  return s;
}

AlternatingFlow reference_flow(const DirectedGraphTriple& t) {
  if (!t.dobrushin) return AlternatingFlow::empty(t);
  auto [a, b] = *t.dobrushin;
  Current w = Current::empty(t.base, SourceSet::pair(a, b));
  // The arc from b to a is the boundary of the face cut off by e_(a,b).
  const EmbeddedGraph& c = t.carrier;
  const int m = t.base.num_edges();
  for (int h : c.face_boundary(c.face_of(2 * m + 1))) {
    int e = EmbeddedGraph::edge_of(h);
    if (e != m) w.edges[e] = w.is_odd(e) ? EdgeState::absent : EdgeState::odd;
  }
  auto fiber = theta_fiber(t, w);
  if (fiber.empty()) throw std::logic_error("boundary arc current has no flow");
  return fiber.front().flow;
}

// Under the literal conventions the augmented height is minus the nesting
// field; the boundary case therefore measures flux right to left.
int orientation(const DirectedGraphTriple& t) { return t.dobrushin ? -1 : 1; }

int cluster_of_a(const DirectedGraphTriple& t, const ClusterDecomposition& c) {
  return t.dobrushin ? c.label[t.dobrushin->first] : -1;
}

bool carrier_edge_odd(const DirectedGraphTriple& t, const Current& w, int e) {
  return e == t.base.num_edges() ? true : w.is_odd(e);
}

std::vector<char> cluster_parity(const DirectedGraphTriple& t, const Current& w, const std::vector<int>& ec,
                                 int cluster) {
  const EmbeddedGraph& c = t.carrier;
  return integrate<char>(c, c.outer_face(), [&](int h) -> char {
    int e = EmbeddedGraph::edge_of(h);
    return ec[e] == cluster && carrier_edge_odd(t, w, e) ? 1 : 0;
  }, std::bit_xor<char>{});
}

}  // namespace

std::vector<Rational> reference_form(const DirectedGraphTriple& t, const DimerGraph& dg) {
  std::vector<Rational> f(dg.num_edges(), 0);
  if (t.dobrushin) {
    for (int e : dobrushin_reference_matching(t, dg).edges) f[e] = 1;
    return f;
  }
  for (int e = 0; e < dg.num_edges(); ++e)
    if (dg.kind[e] == DimerEdgeKind::short_edge) f[e] = Rational(1, 2);
  return f;
}

DimerCover dobrushin_reference_matching(const DirectedGraphTriple& t, const DimerGraph& dg) {
  if (!t.dobrushin) throw std::invalid_argument("triple has no boundary sources");
  return eta_fiber(t, dg, reference_flow(t)).front();
}

HeightField height(const DirectedGraphTriple& t, const DimerGraph& dg, const DimerCover& m) {
  require_plane(dg.graph);
  if (!is_perfect_matching(dg, m)) throw std::invalid_argument("not a perfect matching");
  auto f0 = reference_form(t, dg);
  auto in = membership(dg, m);
  HeightField out;
  out.base_face = dg.face_of_carrier_face(t.carrier.outer_face());
  out.value = integrate<Rational>(dg.graph, out.base_face, [&](int h) {
    int e = EmbeddedGraph::edge_of(h);
    Rational flux = orientation(t) * (Rational(in[e]) - f0[e]);
    return dg.white[dg.graph.origin(h)] ? Rational(-flux) : flux;
  });
  return out;
}

std::vector<Rational> on_carrier_faces(const DimerGraph& dg, const HeightField& h) {
  std::vector<Rational> v(dg.carrier_face_anchor.size());
  for (std::size_t f = 0; f < v.size(); ++f) v[f] = h.value[dg.face_of_carrier_face(static_cast<int>(f))];
  return v;
}

std::vector<Rational> on_base_vertices(const DimerGraph& dg, const HeightField& h) {
  std::vector<Rational> v(dg.vertex_face_anchor.size(), 0);
  for (std::size_t z = 0; z < v.size(); ++z) {
    int f = dg.face_of_base_vertex(static_cast<int>(z));
    if (f >= 0) v[z] = h.value[f];
  }
  return v;
}

std::vector<int> flow_height(const DirectedGraphTriple& t, const AlternatingFlow& f) {
  require_plane(t.carrier);
  AlternatingFlow f0 = reference_flow(t);
  return integrate<int>(t.carrier, t.carrier.outer_face(),
                        [&](int h) { return orientation(t) * strand_step(t, h, [&](int d) { return int(f.has(d)) - int(f0.has(d)); }); });
}

std::vector<int> edge_clusters(const DirectedGraphTriple& t, const ClusterDecomposition& c, const Current& w) {
  const int m = t.base.num_edges();
  std::vector<int> ec(t.carrier.num_edges(), -1);
  for (int e = 0; e < m; ++e)
    if (w.is_open(e)) ec[e] = c.label[t.base.origin(2 * e)];
  if (t.dobrushin) ec[m] = cluster_of_a(t, c);
  return ec;
}

bool odd_around(const DirectedGraphTriple& t, const Current& w, int cluster, int u) {
  require_plane(t.carrier);
  auto c = clusters(t.base, w);
  return cluster_parity(t, w, edge_clusters(t, c, w), cluster)[u];
}

NestingField nesting_field(const DirectedGraphTriple& t, const Current& w, std::vector<int> xi) {
  require_plane(t.carrier);
  auto c = clusters(t.base, w);
  if (static_cast<int>(xi.size()) != c.count) throw std::invalid_argument("one sign per cluster is required");
  if (t.dobrushin) xi[cluster_of_a(t, c)] = 1;
  auto ec = edge_clusters(t, c, w);
  std::vector<char> has_odd(c.count, 0);
  for (int e = 0; e < t.carrier.num_edges(); ++e)
    if (ec[e] >= 0 && carrier_edge_odd(t, w, e)) has_odd[ec[e]] = 1;
  NestingField out{std::vector<int>(t.carrier.num_faces(), 0), w, xi};
  for (int k = 0; k < c.count; ++k) {
    if (!has_odd[k]) continue;
    auto p = cluster_parity(t, w, ec, k);
    for (int u = 0; u < t.carrier.num_faces(); ++u)
      if (p[u]) out.value[u] += xi[k];
  }
  return out;
}

NestingField nesting_field(const DirectedGraphTriple& t, const Current& w, std::mt19937_64& rng) {
  auto c = clusters(t.base, w);
  std::bernoulli_distribution coin(0.5);
  std::vector<int> xi(c.count);
  for (int& s : xi) s = coin(rng) ? 1 : -1;
  return nesting_field(t, w, std::move(xi));
}

bool odd_wrt_path(const DirectedGraphTriple& t, const Current& w, int cluster, const FacePath& path) {
  auto c = clusters(t.base, w);
  auto ec = edge_clusters(t, c, w);
  bool odd = false;
  for (int h : path.crossed) {
    int e = EmbeddedGraph::edge_of(h);
    if (ec[e] == cluster && carrier_edge_odd(t, w, e)) odd = !odd;
  }
  return odd;
}

int increment_along(const DirectedGraphTriple& t, const Current& w, const std::vector<int>& xi, const FacePath& path) {
  auto c = clusters(t.base, w);
  if (static_cast<int>(xi.size()) != c.count) throw std::invalid_argument("one sign per cluster is required");
  auto ec = edge_clusters(t, c, w);
  const int c0 = cluster_of_a(t, c);
  std::vector<char> parity(c.count, 0);
  for (int h : path.crossed) {
    int e = EmbeddedGraph::edge_of(h);
    if (ec[e] >= 0 && carrier_edge_odd(t, w, e)) parity[ec[e]] ^= 1;
  }
  int s = 0;
  for (int k = 0; k < c.count; ++k)
    if (parity[k]) s += k == c0 ? 1 : xi[k];
  return s;
}

Rational increment_along(const DirectedGraphTriple& t, const DimerGraph& dg, const DimerCover& m,
                         const FacePath& path) {
  auto in = membership(dg, m);
  std::vector<char> ref(dg.num_edges(), 0);
  if (t.dobrushin)
    for (int e : dobrushin_reference_matching(t, dg).edges) ref[e] = 1;
  int s = 0;
  for (int h : path.crossed)
    s += strand_step(t, h, [&](int d) { return int(in[dg.long_edge_of[d]]) - int(ref[dg.long_edge_of[d]]); });
  return Rational(orientation(t) * s);
}

std::vector<int> base_faces(const DirectedGraphTriple& t) {
  const EmbeddedGraph& c = t.carrier;
  int skip = -1;
  if (t.dobrushin) {
    const int h = 2 * t.base.num_edges();
    skip = c.face_of(h) == c.outer_face() ? c.face_of(h + 1) : c.face_of(h);
  }
  std::vector<int> out;
  for (int f = 0; f < c.num_faces(); ++f)
    if (f != skip) out.push_back(f);
  return out;
}

}  // namespace rcd
