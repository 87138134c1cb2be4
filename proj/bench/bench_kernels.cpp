#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "rcd/experiments.hpp"
#include "rcd/ising.hpp"
#include "rcd/lattice.hpp"
#include "rcd/matching.hpp"

using namespace rcd;

namespace {

double seconds(const std::function<void()>& fn, int reps = 3) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* kernel, double serial, double parallel) {
  std::printf("%-34s %10.4f %10.4f %8.2fx\n", kernel, serial, parallel, serial / parallel);
}

}  // namespace

int main() {
  const int threads = omp_get_max_threads();
  std::printf("OpenMP threads: %d\n%-34s %10s %10s %9s\n", threads, "kernel", "serial s", "omp s", "speedup");

  auto dg = to_dimer_graph(to_directed(named_graph("torus2")));
  Rational z1, z2;
  row("matching Z, torus2 G^d", seconds([&] { z1 = matching_partition_function(dg); }),
      seconds([&] { z2 = matching_partition_function_parallel(dg); }));
  if (z1 != z2) std::printf("  mismatch in matching Z\n");

  std::size_t c1 = 0, c2 = 0;
  row("matching enumeration, torus2 G^d", seconds([&] { c1 = enumerate_matchings(dg).size(); }),
      seconds([&] { c2 = enumerate_matchings_parallel(dg).size(); }));
  if (c1 != c2) std::printf("  mismatch in matching count\n");

  IsingModel m(grid_graph(4, 5, mixed_weights(31)));
  Rational s1, s2;
  const double spin_serial = seconds([&] {
    omp_set_num_threads(1);
    s1 = partition_z(m);
  });
  const double spin_parallel = seconds([&] {
    omp_set_num_threads(threads);
    s2 = partition_z(m);
  });
  row("spin sum, 4x5 grid (2^20 states)", spin_serial, spin_parallel);
  if (s1 != s2) std::printf("  mismatch in spin sum\n");

  ExperimentConfig cfg;
  cfg.sizes = {8, 16, 16, 32};
  cfg.samples = 1000;
  cfg.burn_in_sweeps = 100;
  VarianceReport r1, r2;
  const double worm_serial = seconds([&] {
    omp_set_num_threads(1);
    r1 = run_variance_experiment(cfg);
  }, 1);
  const double worm_parallel = seconds([&] {
    omp_set_num_threads(threads);
    r2 = run_variance_experiment(cfg);
  }, 1);
  row("worm chains, sizes 8,16,16,32", worm_serial, worm_parallel);
  if (variance_csv(r1) != variance_csv(r2)) std::printf("  mismatch in worm estimates\n");
  return 0;
}
