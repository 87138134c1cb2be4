#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "rcd/experiments.hpp"

namespace rcd {

namespace {

double bisect(const auto& f, double lo, double hi) {
  double flo = f(lo);
  if ((flo > 0) == (f(hi) > 0)) throw std::runtime_error("no sign change in bracket");
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double twist_ratio(int l, double x) { return square_torus_z(l, x, true) / square_torus_z(l, x, false); }

}  // namespace

// Row-to-row transfer matrix in the tanh-normalised form, with the row bond
// from column l - 1 back to column 0 negated when twisted.
double square_torus_z(int l, double x, bool twisted) {
  if (l < 2 || l > 12) throw std::invalid_argument("transfer matrix sizes are limited to 2 <= L <= 12");
  const int states = 1 << l;
  auto spin = [](int s, int i) { return (s >> i & 1) ? -1.0 : 1.0; };
  Eigen::VectorXd row(states);
  for (int s = 0; s < states; ++s) {
    double w = 1.0;
    for (int i = 0; i < l; ++i) {
      const double sign = (twisted && i == l - 1) ? -1.0 : 1.0;
      w *= 1.0 + sign * x * spin(s, i) * spin(s, (i + 1) % l);
    }
    row[s] = w;
  }
  Eigen::MatrixXd t(states, states);
  for (int s = 0; s < states; ++s)
    for (int u = 0; u < states; ++u) {
      double w = 1.0;
      for (int i = 0; i < l; ++i) w *= 1.0 + x * spin(s, i) * spin(u, i);
      t(s, u) = w * row[u];
    }
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(states, states);
  for (int k = 0; k < l; ++k) p = p * t;
  return p.trace();
}

bool CriticalCheck::passed() const {
  return std::abs(duality_fixed_point - (std::sqrt(2.0) - 1.0)) < 1e-12 &&
         std::abs(crossing - duality_fixed_point) < tolerance;
}

CriticalCheck check_square_critical_point() {
  CriticalCheck c;
  c.duality_fixed_point = bisect([](double x) { return x - (1 - x) / (1 + x); }, 0.01, 0.99);
  c.crossing = bisect([](double x) { return twist_ratio(4, x) - twist_ratio(6, x); }, 0.3, 0.55);
  return c;
}

}  // namespace rcd
