#include "rcd/ising.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "rcd/height.hpp"

namespace rcd {

namespace {

void require_spin_cap(const EmbeddedGraph& g, int cap) {
  if (g.num_vertices() > cap)
    throw std::length_error("graph has " + std::to_string(g.num_vertices()) + " vertices, spin cap is " +
                            std::to_string(cap));
}

void check_vertices(const EmbeddedGraph& g, const std::vector<int>& spins) {
  for (int v : spins)
    if (v < 0 || v >= g.num_vertices()) throw std::out_of_range("spin vertex out of range");
}

// Sum over spin configurations of prod_X s * prod_e (1 + sign_e x_e s_u s_v).
Rational spin_sum(const EmbeddedGraph& g, const std::vector<int>& spins, const std::vector<char>& flipped) {
  const int n = g.num_vertices(), m = g.num_edges();
  unsigned long xmask = 0;
  for (int v : spins) xmask ^= 1ul << v;
  std::vector<Rational> plus(m), minus(m);
  for (int e = 0; e < m; ++e) {
    Rational x = flipped[e] ? Rational(-g.weight(e)) : g.weight(e);
    plus[e] = 1 + x;
    minus[e] = 1 - x;
  }
  const long total = 1l << n;
  Rational sum = 0;
#pragma omp parallel
  {
    Rational local = 0, w;
#pragma omp for schedule(static)
    for (long s = 0; s < total; ++s) {
      w = 1;
      for (int e = 0; e < m; ++e) {
        const bool differ = ((s >> g.origin(2 * e)) ^ (s >> g.origin(2 * e + 1))) & 1;
        w *= differ ? minus[e] : plus[e];
      }
      if (std::popcount(static_cast<unsigned long>(s) & xmask) & 1) local -= w;
      else local += w;
    }
#pragma omp critical
    sum += local;
  }
  return sum;
}

int sine_sign(const Rational& h) {
  Rational k = h - Rational(1, 2);
  if (k.get_den() != 1) throw std::logic_error("height at a vertex is not a half-integer");
  return mpz_even_p(k.get_num_mpz_t()) ? 1 : -1;
}

int cosine_sign(const Rational& h) {
  if (h.get_den() != 1) throw std::logic_error("height at a face is not an integer");
  return mpz_even_p(h.get_num_mpz_t()) ? 1 : -1;
}

// Spins at isolated vertices carry independent fair signs: an odd count
// kills the expectation. Returns false in that case and removes them.
bool drop_isolated(const EmbeddedGraph& g, std::vector<int>& spins) {
  std::map<int, int> count;
  std::vector<int> kept;
  for (int v : spins) {
    if (g.degree(v) == 0) ++count[v];
    else kept.push_back(v);
  }
  spins = std::move(kept);
  for (auto [v, c] : count)
    if (c & 1) return false;
  return true;
}

}  // namespace

IsingModel::IsingModel(EmbeddedGraph g) : g_(std::move(g)) {
  for (int e = 0; e < g_.num_edges(); ++e)
    if (g_.weight(e) <= 0 || g_.weight(e) >= 1) throw std::invalid_argument("x_e must lie in (0, 1)");
}

double IsingModel::coupling(int e) const { return std::atanh(to_double(x(e))); }

DisorderLine DisorderLine::along(const EmbeddedGraph& g, const FacePath& path) {
  validate_face_path(g, path);
  if (path.faces.front() != g.outer_face()) throw std::invalid_argument("disorder lines start at the unbounded face");
  DisorderLine l;
  l.end_face = path.faces.back();
  for (int h : path.crossed) l.crossed.push_back(EmbeddedGraph::edge_of(h));
  return l;
}

std::vector<char> odd_crossings(const EmbeddedGraph& g, const std::vector<DisorderLine>& lines) {
  std::vector<char> odd(g.num_edges(), 0);
  for (const auto& l : lines)
    for (int e : l.crossed) {
      if (e < 0 || e >= g.num_edges()) throw std::out_of_range("crossed edge out of range");
      odd[e] ^= 1;
    }
  return odd;
}

void validate_line(const EmbeddedGraph& g, const DisorderLine& line) {
  if (g.topology() != Topology::plane) throw std::domain_error("disorder lines are defined on the plane only");
  if (line.end_face < 0 || line.end_face >= g.num_faces()) throw std::invalid_argument("end face out of range");
  auto odd = odd_crossings(g, {line});
  std::vector<char> parity(g.num_faces(), 0);
  for (int e = 0; e < g.num_edges(); ++e)
    if (odd[e]) {
      parity[g.face_of(2 * e)] ^= 1;
      parity[g.face_of(2 * e + 1)] ^= 1;
    }
  parity[g.outer_face()] ^= 1;
  parity[line.end_face] ^= 1;
  for (char p : parity)
    if (p) throw std::invalid_argument("crossed edges do not join the unbounded face to the end face");
}

Rational spin_weight(const IsingModel& m, unsigned long spins) {
  const EmbeddedGraph& g = m.graph();
  Rational w = 1;
  for (int e = 0; e < g.num_edges(); ++e) {
    const bool differ = ((spins >> g.origin(2 * e)) ^ (spins >> g.origin(2 * e + 1))) & 1;
    w *= differ ? Rational(1 - m.x(e)) : Rational(1 + m.x(e));
  }
  return w;
}

Rational partition_z(const IsingModel& m, int cap) {
  require_spin_cap(m.graph(), cap);
  return spin_sum(m.graph(), {}, std::vector<char>(m.graph().num_edges(), 0));
}

Rational correlation(const IsingModel& m, const std::vector<int>& spins, const std::vector<DisorderLine>& lines,
                     int cap) {
  const EmbeddedGraph& g = m.graph();
  require_spin_cap(g, cap);
  check_vertices(g, spins);
  for (const auto& l : lines) validate_line(g, l);
  return spin_sum(g, spins, odd_crossings(g, lines)) / partition_z(m, cap);
}

Rational bozonization_rhs(const IsingModel& m, const std::vector<int>& spins, const std::vector<DisorderLine>& lines,
                          int cap) {
  const EmbeddedGraph& g = m.graph();
  check_vertices(g, spins);
  for (const auto& l : lines) validate_line(g, l);
  std::vector<int> xs = spins;
  if (!drop_isolated(g, xs)) return 0;
  auto t = to_directed(g);
  auto dg = to_dimer_graph(t);
  Rational num = 0, z = 0;
  for_each_matching(dg, [&](const DimerCover& cover) {
    auto h = height(t, dg, cover);
    auto at_vertex = on_base_vertices(dg, h);
    auto at_face = on_carrier_faces(dg, h);
    int sign = 1;
    for (int v : xs) sign *= sine_sign(at_vertex[v]);
    for (const auto& l : lines) sign *= cosine_sign(at_face[l.end_face]);
    Rational w = dimer_measure_weight(dg, cover);
    z += w;
    if (sign > 0) num += w;
    else num -= w;
  }, cap);
  return num / z;
}

bool in_even_event(const EmbeddedGraph& g, const Current& w, const std::vector<int>& spins) {
  check_vertices(g, spins);
  auto c = clusters(g, w);
  std::vector<char> parity(c.count, 0);
  for (int v : spins) parity[c.label[v]] ^= 1;
  for (char p : parity)
    if (p) return false;
  return true;
}

Rational double_current_side(const IsingModel& m, const std::vector<int>& spins,
                             const std::vector<DisorderLine>& lines, int cap) {
  const EmbeddedGraph& g = m.graph();
  check_vertices(g, spins);
  for (const auto& l : lines) validate_line(g, l);
  auto odd = odd_crossings(g, lines);
  Rational num = 0, z = 0;
  for_each_current(g, SourceSet{}, [&](const Current& w) {
    Rational weight = double_current_weight(g, w);
    z += weight;
    if (!in_even_event(g, w, spins)) return;
    int flips = 0;
    for (int e = 0; e < g.num_edges(); ++e) flips += w.is_odd(e) && odd[e];
    if (flips & 1) num -= weight;
    else num += weight;
  }, cap);
  return num / z;
}

std::string SwitchingCheck::table() const {
  std::ostringstream out;
  out << "spin correlation squared  " << to_string(spin_squared) << "\n"
      << "double current side       " << to_string(double_current) << "\n"
      << "dimer side                " << to_string(dimer) << "\n";
  return out.str();
}

SwitchingCheck switching_identity_check(const IsingModel& m, const std::vector<int>& spins,
                                        const std::vector<DisorderLine>& lines) {
  SwitchingCheck c;
  Rational s = correlation(m, spins, lines);
  c.spin_squared = s * s;
  c.double_current = double_current_side(m, spins, lines);
  c.dimer = bozonization_rhs(m, spins, lines);
  return c;
}

Rational conditional_sine_identity(const IsingModel& m, const Current& w, const std::vector<int>& spins, int cap) {
  const EmbeddedGraph& g = m.graph();
  check_vertices(g, spins);
  if (!w.sources.empty() || !is_valid_current(g, w)) throw std::invalid_argument("expected a sourceless current");
  std::vector<int> xs = spins;
  if (!drop_isolated(g, xs)) return 0;
  auto t = to_directed(g);
  auto dg = to_dimer_graph(t);
  Rational num = 0, z = 0;
  for_each_matching(dg, [&](const DimerCover& cover) {
    if (!(pi(t, dg, cover) == w)) return;
    auto at_vertex = on_base_vertices(dg, height(t, dg, cover));
    int sign = 1;
    for (int v : xs) sign *= sine_sign(at_vertex[v]);
    Rational weight = dimer_measure_weight(dg, cover);
    z += weight;
    if (sign > 0) num += weight;
    else num -= weight;
  }, cap);
  if (z == 0) throw std::logic_error("current has an empty pi-fiber");
  return num / z;
}

}  // namespace rcd
