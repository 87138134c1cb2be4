#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "rcd/embedded_graph.hpp"
#include "rcd/quadratic.hpp"

namespace rcd {

// Even-cardinality set of source vertices, kept sorted.
class SourceSet {
 public:
  SourceSet() = default;
  explicit SourceSet(std::vector<int> vertices);
  static SourceSet pair(int a, int b) { return SourceSet({a, b}); }

  const std::vector<int>& vertices() const { return vertices_; }
  bool empty() const { return vertices_.empty(); }
  bool contains(int v) const;
  friend bool operator==(const SourceSet&, const SourceSet&) = default;

 private:
  std::vector<int> vertices_;
};

enum class EdgeState : unsigned char { absent = 0, odd = 1, even = 2 };

struct Current {
  std::vector<EdgeState> edges;
  SourceSet sources;

  static Current empty(const EmbeddedGraph& g, SourceSet sources = {});
  bool is_odd(int e) const { return edges[e] == EdgeState::odd; }
  bool is_open(int e) const { return edges[e] != EdgeState::absent; }
  int num_open() const;
  std::vector<char> odd_mask() const;
  friend bool operator==(const Current&, const Current&) = default;
};

bool is_valid_current(const EmbeddedGraph& g, const Current& w);

// Field containing sqrt(1 - x_e^2) for every edge.
std::shared_ptr<const RadicalField> current_field(const EmbeddedGraph& g);
// p_e = 1 - sqrt(1 - x_e^2).
QuadraticNumber edge_p(const EmbeddedGraph& g, int e, const std::shared_ptr<const RadicalField>& field);

// prod_odd x_e prod_even p_e prod_rest (1 - p_e), exactly.
QuadraticNumber current_weight(const EmbeddedGraph& g, const Current& w,
                               const std::shared_ptr<const RadicalField>& field);
QuadraticNumber current_weight(const EmbeddedGraph& g, const Current& w);

// 2^(|w| + k(w)) prod_odd x_e prod_even x_e^2 prod_rest (1 - x_e^2).
Rational double_current_weight(const EmbeddedGraph& g, const Current& w);

// Odd part is the symmetric difference, open edges are the union and the
// sources add mod 2. One of the two source sets must be empty.
Current sum_currents(const EmbeddedGraph& g, const Current& a, const Current& b);

struct ClusterDecomposition {
  std::vector<int> label;  // per vertex, clusters numbered by smallest vertex
  int count = 0;           // k(w), isolated vertices included
  std::vector<int> size;
  std::vector<char> touches_sources;
  // Cluster contains a cycle crossing the first / second torus cut.
  std::vector<char> winds_x, winds_y;

  bool isolated(int c) const { return size[c] == 1; }
};

// Components of (V, open edges). `open` overrides the edge set when given.
ClusterDecomposition clusters(const EmbeddedGraph& g, const Current& w);
ClusterDecomposition clusters_of_edges(const EmbeddedGraph& g, const std::vector<char>& open,
                                       const SourceSet& sources = {});

inline constexpr int kDefaultEnumerationCap = 14;

// Calls `fn` on every current with sources B, ordered by odd set then even
// set, both as bitmasks over edge ids.
void for_each_current(const EmbeddedGraph& g, const SourceSet& b, const std::function<void(const Current&)>& fn,
                      int cap = kDefaultEnumerationCap);
std::vector<Current> enumerate_currents(const EmbeddedGraph& g, const SourceSet& b, int cap = kDefaultEnumerationCap);

// Subsets of edges with odd degree exactly at B, as bitmasks.
std::vector<unsigned long> odd_sets(const EmbeddedGraph& g, const SourceSet& b, int cap = kDefaultEnumerationCap);

}  // namespace rcd
