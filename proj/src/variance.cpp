#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "rcd/experiments.hpp"
#include "rcd/lattice.hpp"
#include "rcd/worm.hpp"

namespace rcd {

namespace {

struct Moments {
  double mean = 0.0;
  double stderr_ = 0.0;
};

// Batch means over `batches` equal consecutive blocks; the remainder only
// enters the mean.
Moments batch_means(const std::vector<double>& xs, int batches) {
  Moments m;
  const std::size_t n = xs.size();
  for (double v : xs) m.mean += v;
  m.mean /= static_cast<double>(n);
  const std::size_t len = n / batches;
  if (len == 0 || batches < 2) return m;
  std::vector<double> means(batches, 0.0);
  double grand = 0.0;
  for (int b = 0; b < batches; ++b) {
    for (std::size_t i = b * len; i < (b + 1) * len; ++i) means[b] += xs[i];
    means[b] /= static_cast<double>(len);
    grand += means[b];
  }
  grand /= batches;
  double ss = 0.0;
  for (double v : means) ss += (v - grand) * (v - grand);
  m.stderr_ = std::sqrt(ss / (batches - 1) / batches);
  return m;
}

// Integrated autocorrelation time with Sokal's automatic window (c = 6).
double tau_int(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  if (n < 2) return 0.5;
  double mean = 0.0;
  for (double v : xs) mean += v;
  mean /= static_cast<double>(n);
  double c0 = 0.0;
  for (double v : xs) c0 += (v - mean) * (v - mean);
  c0 /= static_cast<double>(n);
  if (c0 == 0.0) return 0.5;
  double tau = 0.5;
  for (std::size_t t = 1; t < n; ++t) {
    double ct = 0.0;
    for (std::size_t i = 0; i + t < n; ++i) ct += (xs[i] - mean) * (xs[i + t] - mean);
    tau += ct / static_cast<double>(n) / c0;
    if (static_cast<double>(t) >= 6.0 * tau) break;
  }
  return tau;
}

// Clusters of w odd with respect to the path, as a flag per cluster label.
std::vector<char> odd_clusters(const EmbeddedGraph& g, const Current& w, const ClusterDecomposition& c,
                               const FacePath& path) {
  std::vector<char> parity(c.count, 0);
  for (int h : path.crossed) {
    const int e = EmbeddedGraph::edge_of(h);
    if (w.is_odd(e)) parity[c.label[g.origin(2 * e)]] ^= 1;
  }
  return parity;
}

SizeEstimate run_size(const ExperimentConfig& config, double x, int index) {
  const int n = config.sizes[index];
  auto g = torus_quotient(square_cell(Rational(1, 2)), n);
  const auto path = horizontal_path(g, n, std::max(1, n / 2));
  const std::vector<double> xs(g.num_edges(), x);
  WormSampler a(g, {}, xs, chain_seed(config.seed, 3 * index));
  WormSampler b(g, {}, xs, chain_seed(config.seed, 3 * index + 1));
  std::mt19937_64 signs(chain_seed(config.seed, 3 * index + 2));
  a.advance_sweeps(config.burn_in_sweeps);
  b.advance_sweeps(config.burn_in_sweeps);
  // Samples are taken every `thin` closed visits, a number fixed before
  // sampling from the burn-in ratio of steps to visits.
  auto visits_for = [&](const WormSampler& w) {
    const double per_step = w.steps() > 0 ? static_cast<double>(w.visits()) / w.steps() : 1.0;
    return std::max(1LL, std::llround(config.thin_sweeps * g.num_edges() * per_step));
  };
  const long long thin_a = visits_for(a), thin_b = visits_for(b);
  const long long steps0 = a.steps() + b.steps();

  SizeEstimate est;
  est.n = n;
  est.samples = config.samples;
  std::vector<double> counts, squares;
  counts.reserve(config.samples);
  squares.reserve(config.samples);
  for (long long s = 0; s < config.samples; ++s) {
    const Current wa = a.sample(thin_a), wb = b.sample(thin_b);
    const Current w = sum_currents(g, wa, wb);
    const auto c = clusters(g, w);
    const auto odd = odd_clusters(g, w, c, path);
    int count = 0, total = 0;
    for (char o : odd)
      if (o) {
        ++count;
        total += (signs() & 1) ? 1 : -1;
      }
    counts.push_back(count);
    squares.push_back(static_cast<double>(total) * total);
    if (s % 10 == 0) {
      ++est.subadditivity_checked;
      if (count > odd_cluster_count(g, wa, path) + odd_cluster_count(g, wb, path)) ++est.subadditivity_violations;
    }
  }
  est.steps_per_sample = static_cast<double>(a.steps() + b.steps() - steps0) / (2.0 * config.samples);
  est.visits_per_sample = 0.5 * static_cast<double>(thin_a + thin_b);
  const auto mc = batch_means(counts, config.batches);
  const auto md = batch_means(squares, config.batches);
  est.var_s = mc.mean;
  est.stderr_s = mc.stderr_;
  est.var_s_direct = md.mean;
  est.stderr_direct = md.stderr_;
  est.tau_int = tau_int(counts);
  est.converged = est.tau_int <= static_cast<double>(config.samples) / config.tau_budget_divisor;
  return est;
}

}  // namespace

FacePath horizontal_path(const EmbeddedGraph& torus, int n, int length) {
  if (length < 1 || length > n) throw std::invalid_argument("path length must lie in [1, n]");
  if (torus.num_edges() != 2 * n * n) throw std::invalid_argument("expected the square-lattice torus of side n");
  std::vector<int> crossed;
  for (int i = 0; i < length; ++i) crossed.push_back(2 * (2 * i + 1));
  return face_path_from_crossings(torus, torus.face_of(crossed.front()), crossed);
}

int odd_cluster_count(const EmbeddedGraph& g, const Current& w, const FacePath& path) {
  const auto c = clusters(g, w);
  int count = 0;
  for (char o : odd_clusters(g, w, c, path)) count += o;
  return count;
}

double exact_mean_odd_count_torus2(double x) {
  auto g = torus_quotient(square_cell(Rational(1, 2)), 2);
  const auto path = horizontal_path(g, 2, 1);
  double z = 0.0, sum = 0.0;
  for_each_current(g, SourceSet{}, [&](const Current& w) {
    double weight = std::pow(2.0, w.num_open() + clusters(g, w).count);
    for (int e = 0; e < g.num_edges(); ++e) {
      switch (w.edges[e]) {
        case EdgeState::odd: weight *= x; break;
        case EdgeState::even: weight *= x * x; break;
        case EdgeState::absent: weight *= 1 - x * x; break;
      }
    }
    z += weight;
    sum += weight * odd_cluster_count(g, w, path);
  });
  return sum / z;
}

bool VarianceReport::converged() const {
  for (const auto& s : sizes)
    if (!s.converged) return false;
  return true;
}

bool VarianceReport::estimators_agree() const {
  for (const auto& s : sizes) {
    const double se = std::hypot(s.stderr_s, s.stderr_direct);
    if (std::abs(s.var_s - s.var_s_direct) > 3.0 * se) return false;
  }
  return true;
}

VarianceReport run_variance_experiment(const ExperimentConfig& config) {
  config.validate();
  VarianceReport report;
  report.config = config;
  report.x = config.effective_x();
  report.target = 1.0 / std::numbers::pi;
  const int k = static_cast<int>(config.sizes.size());
  report.sizes.resize(k);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < k; ++i) report.sizes[i] = run_size(config, report.x, i);

  if (k >= 2) {
    double mx = 0.0, my = 0.0;
    for (const auto& s : report.sizes) {
      mx += std::log(s.n);
      my += s.var_s;
    }
    mx /= k;
    my /= k;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& s : report.sizes) {
      sxx += (std::log(s.n) - mx) * (std::log(s.n) - mx);
      sxy += (std::log(s.n) - mx) * (s.var_s - my);
    }
    if (sxx > 0) {
      report.slope = sxy / sxx;
      double var = 0.0;
      for (const auto& s : report.sizes) {
        const double c = (std::log(s.n) - mx) / sxx;
        var += c * c * s.stderr_s * s.stderr_s;
      }
      report.slope_stderr = std::sqrt(var);
    }
  }
  return report;
}

}  // namespace rcd
