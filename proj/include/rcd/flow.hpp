#pragma once

#include <functional>
#include <random>
#include <vector>

#include "rcd/current.hpp"
#include "rcd/directed.hpp"

namespace rcd {

// Subset of directed edges of G->. mask[e] holds the present strands of base
// edge e (bit k = strand k: s1, m, s2); `boundary` is e_(a,b).
struct AlternatingFlow {
  std::vector<unsigned char> mask;
  bool boundary = false;

  static AlternatingFlow empty(const DirectedGraphTriple& t);
  bool has(int directed_edge) const;
  friend bool operator==(const AlternatingFlow&, const AlternatingFlow&) = default;
  friend auto operator<=>(const AlternatingFlow&, const AlternatingFlow&) = default;
};

bool is_alternating(const DirectedGraphTriple& t, const AlternatingFlow& f);
// Vertices of G with no incident present edge.
std::vector<int> isolated_vertices(const DirectedGraphTriple& t, const AlternatingFlow& f);
// 2^|V^c(F)| prod_{present} x.
Rational flow_weight(const DirectedGraphTriple& t, const AlternatingFlow& f);

// One or three strands: odd; two: even. Sources are {a, b} when augmented.
Current theta(const DirectedGraphTriple& t, const AlternatingFlow& f);

// All alternating flows (containing e_(a,b) when augmented), by pruned scan
// over the 8 strand subsets of each base edge.
void for_each_flow(const DirectedGraphTriple& t, const std::function<void(const AlternatingFlow&)>& fn,
                   int cap = kDefaultEnumerationCap);
std::vector<AlternatingFlow> enumerate_flows(const DirectedGraphTriple& t, int cap = kDefaultEnumerationCap);

// Per-edge orientation classes of the flows over a current. Class 0 is
// {s1, m} for even edges and {m} for odd ones; class 1 is {m, s2}, resp.
// {s1}, {s2}, {s1, m, s2}. Around each vertex the classes of the open edges
// are forced once one of them is fixed, so a cluster has two orientations
// (one when it carries e_(a,b)).
struct ClusterOrientation {
  ClusterDecomposition clusters;
  std::vector<int> root_edge;        // per cluster: smallest open edge, -1 if trivial
  std::vector<char> fixed;           // per cluster: orientation forced by e_(a,b)
  std::vector<int> edge_class;       // per base edge: 0 / 1, -1 if absent
};

// Classes for the orientation vector `xi` (+1 keeps the root edge in class 0,
// -1 puts it in class 1; ignored for trivial or fixed clusters). Throws
// GraphError if the propagation is inconsistent.
ClusterOrientation orient_clusters(const DirectedGraphTriple& t, const Current& w, const std::vector<int>& xi);

struct FiberElement {
  AlternatingFlow flow;
  // Per cluster: +1 / -1 orientation, 0 for trivial clusters.
  std::vector<int> xi;
};

// Every flow F with theta(F) = w, built cluster by cluster. Empty on the
// torus when a winding cluster cannot be oriented.
std::vector<FiberElement> theta_fiber(const DirectedGraphTriple& t, const Current& w);

// Draws F from the flow measure conditioned on theta(F) = w.
AlternatingFlow sample_flow_given_current(const DirectedGraphTriple& t, const Current& w, std::mt19937_64& rng);

}  // namespace rcd
