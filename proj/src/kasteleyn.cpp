#include "rcd/kasteleyn.hpp"

#include <cmath>
#include <cstdint>

namespace rcd {

namespace {

// Solves a GF(2) system; free variables are set to 0.
std::vector<int> solve_gf2(std::vector<std::vector<std::uint64_t>> rows, int num_vars) {
  const int words = (num_vars + 1 + 63) / 64;
  auto bit = [](const std::vector<std::uint64_t>& r, int i) { return (r[i / 64] >> (i % 64)) & 1; };
  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < num_vars && rank < static_cast<int>(rows.size()); ++col) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (bit(rows[r], col)) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r)
      if (r != rank && bit(rows[r], col))
        for (int w = 0; w < words; ++w) rows[r][w] ^= rows[rank][w];
    pivot_col.push_back(col);
    ++rank;
  }
  for (int r = rank; r < static_cast<int>(rows.size()); ++r)
    if (bit(rows[r], num_vars)) throw GraphError("no Kasteleyn sign assignment exists");
  std::vector<int> x(num_vars, 0);
  for (int r = 0; r < rank; ++r) x[pivot_col[r]] = static_cast<int>(bit(rows[r], num_vars));
  return x;
}

}  // namespace

KasteleynSystem::KasteleynSystem(const DimerGraph& dg) : dg_(&dg) {
  const EmbeddedGraph& g = dg.graph;
  const int m = g.num_edges();
  index_.assign(g.num_vertices(), -1);
  for (int v = 0; v < g.num_vertices(); ++v) index_[v] = dg.white[v] ? num_white_++ : num_black_++;

  const int words = (m + 1 + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows;
  for (int f = 0; f < g.num_faces(); ++f) {
    if (f == g.outer_face()) continue;
    std::vector<std::uint64_t> row(words, 0);
    const auto& boundary = g.face_boundary(f);
    for (int h : boundary) {
      int e = EmbeddedGraph::edge_of(h);
      row[e / 64] ^= std::uint64_t{1} << (e % 64);
    }
    const int k = static_cast<int>(boundary.size()) / 2;
    if ((k + 1) % 2 == 1) row[m / 64] ^= std::uint64_t{1} << (m % 64);
    rows.push_back(std::move(row));
  }
  auto bits = solve_gf2(std::move(rows), m);
  sign_.resize(m);
  for (int e = 0; e < m; ++e) sign_[e] = bits[e] ? -1 : 1;
}

Eigen::MatrixXd KasteleynSystem::matrix(int a, int b) const {
  const DimerGraph& dg = *dg_;
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(num_white_, num_black_);
  for (int e = 0; e < dg.num_edges(); ++e) {
    double s = sign_[e];
    Shift sh = dg.graph.edge_shifts().empty() ? Shift{} : dg.graph.edge_shifts()[e];
    if (a && (sh.dx % 2 != 0)) s = -s;
    if (b && (sh.dy % 2 != 0)) s = -s;
    k(index_[dg.white_of(e)], index_[dg.black_of(e)]) += s * to_double(dg.graph.weight(e));
  }
  return k;
}

double KasteleynSystem::partition_function() const {
  if (num_white_ != num_black_) return 0.0;
  if (num_white_ == 0) return 1.0;
  if (dg_->graph.topology() == Topology::plane) return std::abs(matrix().partialPivLu().determinant());
  double d[2][2];
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) d[a][b] = matrix(a, b).partialPivLu().determinant();
  double z = 0.0;
  for (int hx = 0; hx < 2; ++hx)
    for (int hy = 0; hy < 2; ++hy) {
      double s = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) s += ((a * hx + b * hy) % 2 ? -1.0 : 1.0) * d[a][b];
      z += std::abs(s) / 4.0;
    }
  return z;
}

std::vector<double> KasteleynSystem::edge_marginals() const {
  const DimerGraph& dg = *dg_;
  if (dg.graph.topology() != Topology::plane) throw std::domain_error("edge marginals are implemented on the plane only");
  if (num_white_ != num_black_) throw std::domain_error("graph has no perfect matching");
  Eigen::MatrixXd k = matrix();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(k);
  if (!lu.isInvertible()) throw std::domain_error("Kasteleyn matrix is singular (no perfect matching)");
  Eigen::MatrixXd inv = lu.inverse();
  std::vector<double> p(dg.num_edges());
  for (int e = 0; e < dg.num_edges(); ++e)
    p[e] = sign_[e] * to_double(dg.graph.weight(e)) * inv(index_[dg.black_of(e)], index_[dg.white_of(e)]);
  return p;
}

double KasteleynSystem::marked_partition_function() const {
  if (dg_->marked_edge < 0) return partition_function();
  return partition_function() * edge_marginals()[dg_->marked_edge];
}

double kasteleyn_z(const DimerGraph& dg) {
  KasteleynSystem k(dg);
  return dg.marked_edge >= 0 ? k.marked_partition_function() : k.partition_function();
}

}  // namespace rcd
