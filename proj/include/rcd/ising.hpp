#pragma once

#include <string>
#include <vector>

#include "rcd/current.hpp"
#include "rcd/matching.hpp"

namespace rcd {

inline constexpr int kDefaultSpinCap = 22;

// Ising model with free boundary conditions. The edge weights of the graph
// are the parameters x_e = tanh(beta J_e), rational and in (0, 1).
class IsingModel {
 public:
  explicit IsingModel(EmbeddedGraph g);
  const EmbeddedGraph& graph() const { return g_; }
  const Rational& x(int e) const { return g_.weight(e); }
  // beta J_e = artanh(x_e).
  double coupling(int e) const;

 private:
  EmbeddedGraph g_;
};

// A disorder line from the unbounded face to `end_face`, given by the edges
// it crosses (with repetition). Only the edges crossed an odd number of times
// matter.
struct DisorderLine {
  int end_face = -1;
  std::vector<int> crossed;

  static DisorderLine along(const EmbeddedGraph& g, const FacePath& path);
};

// Throws std::invalid_argument unless the line's odd edges separate exactly
// the unbounded face and end_face in the dual.
void validate_line(const EmbeddedGraph& g, const DisorderLine& line);
// Edges crossed an odd number of times by the union of the lines.
std::vector<char> odd_crossings(const EmbeddedGraph& g, const std::vector<DisorderLine>& lines);

// exp(-beta H(sigma)) / prod_e cosh(beta J_e) = prod_e (1 + x_e s_u s_v);
// bit v of `spins` set means s_v = -1.
Rational spin_weight(const IsingModel& m, unsigned long spins);
Rational partition_z(const IsingModel& m, int cap = kDefaultSpinCap);

// mu[prod_i s_(x_i) prod_j mu_(l_j)]: the couplings of the odd edges are
// flipped. Vertices may repeat.
Rational correlation(const IsingModel& m, const std::vector<int>& spins, const std::vector<DisorderLine>& lines,
                     int cap = kDefaultSpinCap);

// E_dim[prod_i sin(pi h_(x_i)) prod_j cos(pi h_(u_j))] on G^d. An isolated
// vertex has h = +-1/2 with a fair sign.
Rational bozonization_rhs(const IsingModel& m, const std::vector<int>& spins, const std::vector<DisorderLine>& lines,
                          int cap = kDefaultMatchingCap);

// Every cluster of w meets `spins` an even number of times.
bool in_even_event(const EmbeddedGraph& g, const Current& w, const std::vector<int>& spins);

// E_dcurr[(-1)^|w_odd ∩ E_odd| 1{every cluster meets X evenly}] over the
// sourceless double current.
Rational double_current_side(const IsingModel& m, const std::vector<int>& spins,
                             const std::vector<DisorderLine>& lines, int cap = kDefaultEnumerationCap);

struct SwitchingCheck {
  Rational spin_squared;
  Rational double_current;
  Rational dimer;
  bool holds() const { return spin_squared == double_current && double_current == dimer; }
  std::string table() const;
};

SwitchingCheck switching_identity_check(const IsingModel& m, const std::vector<int>& spins,
                                        const std::vector<DisorderLine>& lines);

// E_dim[prod_i sin(pi h_(x_i)) | pi(M) = w] over the pi-fiber of w.
Rational conditional_sine_identity(const IsingModel& m, const Current& w, const std::vector<int>& spins,
                                   int cap = kDefaultMatchingCap);

}  // namespace rcd
