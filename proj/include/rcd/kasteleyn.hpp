#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rcd/dimer_graph.hpp"

namespace rcd {

// Signed white-by-black weight matrices of a bipartite graph. Every face
// (every bounded face on the plane) of length 2k gets sign product
// (-1)^(k+1). On the torus matrix (a, b) additionally flips the sign of edges
// crossing the first cut an odd number of times (if a) and the second
// (if b).
class KasteleynSystem {
 public:
  explicit KasteleynSystem(const DimerGraph& dg);

  const std::vector<int>& signs() const { return sign_; }
  Eigen::MatrixXd matrix(int a = 0, int b = 0) const;
  // Partition function over all perfect matchings (the marked edge is not
  // forced; see marked_partition_function).
  double partition_function() const;
  // Sum over matchings containing the marked edge (plane only).
  double marked_partition_function() const;
  // P(e in M) for every edge (plane only).
  std::vector<double> edge_marginals() const;

  int white_index(int v) const { return index_[v]; }
  int black_index(int v) const { return index_[v]; }

 private:
  const DimerGraph* dg_;
  std::vector<int> sign_;   // per edge
  std::vector<int> index_;  // per vertex, row (white) or column (black)
  int num_white_ = 0, num_black_ = 0;
};

double kasteleyn_z(const DimerGraph& dg);

}  // namespace rcd
