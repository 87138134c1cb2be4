#include "rcd/matching.hpp"

#include <algorithm>
#include <omp.h>

namespace rcd {

namespace {

class Search {
 public:
  explicit Search(const DimerGraph& dg) : g_(dg.graph), matched_(dg.num_vertices(), 0) {}

  bool take(int e) {
    int u = g_.origin(2 * e), v = g_.origin(2 * e + 1);
    if (u == v || matched_[u] || matched_[v]) return false;
    matched_[u] = matched_[v] = 1;
    chosen_.push_back(e);
    return true;
  }

  void undo() {
    int e = chosen_.back();
    chosen_.pop_back();
    matched_[g_.origin(2 * e)] = matched_[g_.origin(2 * e + 1)] = 0;
  }

  // Explores all completions. `stop_depth` >= 0 reports partial states with
  // that many chosen edges instead of recursing further.
  template <class F>
  void run(int next, int stop_depth, F&& fn) {
    while (next < static_cast<int>(matched_.size()) && matched_[next]) ++next;
    if (next == static_cast<int>(matched_.size()) || static_cast<int>(chosen_.size()) == stop_depth) {
      fn(chosen_);
      return;
    }
    for (int h : g_.rotation(next)) {
      if (!take(EmbeddedGraph::edge_of(h))) continue;
      run(next + 1, stop_depth, fn);
      undo();
    }
  }

  bool complete() const { return std::all_of(matched_.begin(), matched_.end(), [](char c) { return c != 0; }); }

 private:
  const EmbeddedGraph& g_;
  std::vector<char> matched_;
  std::vector<int> chosen_;
};

void check_cap(const DimerGraph& dg, int cap) {
  if (dg.num_vertices() > cap)
    throw std::length_error("dimer graph has " + std::to_string(dg.num_vertices()) + " vertices, cap is " +
                            std::to_string(cap));
}

DimerCover to_cover(std::vector<int> edges) {
  std::sort(edges.begin(), edges.end());
  return DimerCover{std::move(edges)};
}

Rational weight_of(const DimerGraph& dg, const std::vector<int>& edges) {
  Rational w = 1;
  for (int e : edges) w *= dg.graph.weight(e);
  return w;
}

// Prefixes (partial matchings) of the search tree, in serial order.
std::vector<std::vector<int>> prefixes(const DimerGraph& dg, int target) {
  std::vector<std::vector<int>> out;
  for (int depth = 1; depth <= 6; ++depth) {
    out.clear();
    Search s(dg);
    if (dg.marked_edge >= 0 && !s.take(dg.marked_edge)) return {};
    const int base = dg.marked_edge >= 0 ? 1 : 0;
    s.run(0, base + depth, [&](const std::vector<int>& chosen) { out.push_back(chosen); });
    if (static_cast<int>(out.size()) >= target) break;
  }
  return out;
}

// Replays `prefix` and calls fn on every completion.
template <class F>
void complete_prefix(const DimerGraph& dg, const std::vector<int>& prefix, F&& fn) {
  Search s(dg);
  for (int e : prefix) s.take(e);
  s.run(0, -1, fn);
}

}  // namespace

bool is_perfect_matching(const DimerGraph& dg, const DimerCover& m) {
  std::vector<int> count(dg.num_vertices(), 0);
  for (int e : m.edges) {
    if (e < 0 || e >= dg.num_edges()) return false;
    ++count[dg.graph.origin(2 * e)];
    ++count[dg.graph.origin(2 * e + 1)];
  }
  if (dg.marked_edge >= 0 && !std::binary_search(m.edges.begin(), m.edges.end(), dg.marked_edge)) return false;
  return std::all_of(count.begin(), count.end(), [](int c) { return c == 1; });
}

void for_each_matching(const DimerGraph& dg, const std::function<void(const DimerCover&)>& fn, int cap) {
  check_cap(dg, cap);
  if (dg.num_vertices() % 2 != 0) return;
  Search s(dg);
  if (dg.marked_edge >= 0 && !s.take(dg.marked_edge)) return;
  s.run(0, -1, [&](const std::vector<int>& chosen) { fn(to_cover(chosen)); });
}

std::vector<DimerCover> enumerate_matchings(const DimerGraph& dg, int cap) {
  std::vector<DimerCover> out;
  for_each_matching(dg, [&](const DimerCover& m) { out.push_back(m); }, cap);
  return out;
}

std::vector<DimerCover> enumerate_matchings_parallel(const DimerGraph& dg, int cap) {
  check_cap(dg, cap);
  if (dg.num_vertices() % 2 != 0) return {};
  auto pre = prefixes(dg, 8 * omp_get_max_threads());
  std::vector<std::vector<DimerCover>> parts(pre.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < pre.size(); ++i)
    complete_prefix(dg, pre[i], [&](const std::vector<int>& chosen) { parts[i].push_back(to_cover(chosen)); });
  std::vector<DimerCover> out;
  for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  return out;
}

Rational matching_partition_function(const DimerGraph& dg, int cap) {
  Rational z = 0;
  check_cap(dg, cap);
  if (dg.num_vertices() % 2 != 0) return z;
  Search s(dg);
  if (dg.marked_edge >= 0 && !s.take(dg.marked_edge)) return z;
  s.run(0, -1, [&](const std::vector<int>& chosen) { z += weight_of(dg, chosen); });
  return z;
}

Rational matching_partition_function_parallel(const DimerGraph& dg, int cap) {
  check_cap(dg, cap);
  if (dg.num_vertices() % 2 != 0) return 0;
  auto pre = prefixes(dg, 8 * omp_get_max_threads());
  std::vector<Rational> parts(pre.size(), Rational(0));
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < pre.size(); ++i)
    complete_prefix(dg, pre[i], [&](const std::vector<int>& chosen) { parts[i] += weight_of(dg, chosen); });
  Rational z = 0;
  for (const auto& p : parts) z += p;
  return z;
}

Rational dimer_measure_weight(const DimerGraph& dg, const DimerCover& m) {
  if (!is_perfect_matching(dg, m)) throw std::invalid_argument("not a perfect matching");
  return weight_of(dg, m.edges);
}

AlternatingFlow eta(const DirectedGraphTriple& t, const DimerGraph& dg, const DimerCover& m) {
  AlternatingFlow f = AlternatingFlow::empty(t);
  f.boundary = false;
  const int nb = t.base.num_edges();
  for (int e : m.edges) {
    const int d = dg.directed_edge[e];
    if (d < 0) continue;
    if (d / 3 == nb)
      f.boundary = true;
    else
      f.mask[d / 3] |= static_cast<unsigned char>(1 << (d % 3));
  }
  if (!is_alternating(t, f)) throw std::logic_error("eta produced a non-alternating flow");
  return f;
}

Current pi(const DirectedGraphTriple& t, const DimerGraph& dg, const DimerCover& m) { return theta(t, eta(t, dg, m)); }

namespace {

// Short-edge completions on every cycle; `choose` picks one of the two
// matchings of an untouched cycle.
template <class Choose>
bool complete_cycles(const DimerGraph& dg, std::vector<char>& covered, std::vector<int>& edges, Choose&& choose) {
  for (std::size_t z = 0; z < dg.cycle.size(); ++z) {
    const auto& cyc = dg.cycle[z];
    const int k = static_cast<int>(cyc.size());
    if (k == 0) continue;
    int start = -1;
    for (int i = 0; i < k && start < 0; ++i)
      if (covered[cyc[i]]) start = i;
    if (start < 0) {
      const int parity = choose(static_cast<int>(z));
      for (int i = parity; i < k; i += 2) edges.push_back(dg.cycle_edges[z][i]);
      continue;
    }
    // Free arcs between covered vertices are matched in consecutive pairs.
    for (int s = 1; s <= k; ++s) {
      const int i = (start + s) % k;
      if (covered[cyc[i]]) continue;
      const int j = (i + 1) % k;
      if (covered[cyc[j]]) return false;
      edges.push_back(dg.cycle_edges[z][i]);
      covered[cyc[i]] = covered[cyc[j]] = 1;
    }
  }
  return true;
}

std::vector<char> long_edge_cover(const DimerGraph& dg, const DirectedGraphTriple& t, const AlternatingFlow& f,
                                  std::vector<int>& edges) {
  std::vector<char> covered(dg.num_vertices(), 0);
  for (std::size_t d = 0; d < t.edges.size(); ++d) {
    if (!f.has(static_cast<int>(d))) continue;
    const int e = dg.long_edge_of[d];
    edges.push_back(e);
    covered[dg.graph.origin(2 * e)] = covered[dg.graph.origin(2 * e + 1)] = 1;
  }
  return covered;
}

}  // namespace

std::vector<DimerCover> eta_fiber(const DirectedGraphTriple& t, const DimerGraph& dg, const AlternatingFlow& f) {
  if (!is_alternating(t, f)) throw std::invalid_argument("flow is not alternating");
  std::vector<int> base_edges;
  auto covered = long_edge_cover(dg, t, f, base_edges);
  std::vector<int> free_cycles;
  for (std::size_t z = 0; z < dg.cycle.size(); ++z) {
    bool any = false;
    for (int c : dg.cycle[z]) any = any || covered[c];
    if (!any && !dg.cycle[z].empty()) free_cycles.push_back(static_cast<int>(z));
  }
  std::vector<DimerCover> out;
  for (unsigned long bits = 0; bits < (1ul << free_cycles.size()); ++bits) {
    auto cov = covered;
    auto edges = base_edges;
    auto choose = [&](int z) {
      auto it = std::find(free_cycles.begin(), free_cycles.end(), z);
      return static_cast<int>(bits >> (it - free_cycles.begin()) & 1);
    };
    if (!complete_cycles(dg, cov, edges, choose)) throw std::logic_error("odd free arc in a cycle");
    out.push_back(to_cover(std::move(edges)));
  }
  return out;
}

DimerCover sample_dimer_via_current(const DirectedGraphTriple& t, const DimerGraph& dg, const Current& w,
                                    std::mt19937_64& rng) {
  AlternatingFlow f = sample_flow_given_current(t, w, rng);
  std::vector<int> edges;
  auto covered = long_edge_cover(dg, t, f, edges);
  std::bernoulli_distribution coin(0.5);
  if (!complete_cycles(dg, covered, edges, [&](int) { return coin(rng) ? 1 : 0; }))
    throw std::logic_error("odd free arc in a cycle");
  return to_cover(std::move(edges));
}

}  // namespace rcd
