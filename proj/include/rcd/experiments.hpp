#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "rcd/current.hpp"

namespace rcd {

inline constexpr const char* kReportSchema = "v1";

struct ExperimentConfig {
  std::string lattice = "square";
  double x = 0.0;  // 0 selects the critical point of the lattice
  std::vector<int> sizes{16, 32, 64};
  long long samples = 10000;
  double burn_in_sweeps = 1000;  // sweeps of |E| worm steps
  // Closed worm visits between samples, chosen as about thin_sweeps * |E|
  // steps.
  double thin_sweeps = 1;
  int batches = 50;
  std::uint64_t seed = 1;
  // A chain whose integrated autocorrelation time of N_gamma exceeds
  // samples / tau_budget_divisor is reported as not converged.
  double tau_budget_divisor = 50;
  std::string csv_path;
  std::string json_path;

  double effective_x() const;
  void validate() const;
  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
};

ExperimentConfig load_config(const std::string& path);

// ---- verification suite

struct CheckResult {
  std::string graph;
  std::string identity;
  bool passed = false;
  long long configurations = 0;
  std::string witness;  // first mismatch, empty when passed
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool all_passed() const;
  nlohmann::json to_json() const;
  static VerificationReport from_json(const nlohmann::json& j);
};

struct SuiteOptions {
  std::vector<std::string> graphs;  // empty: the default suite
  // Test mode: doubles the weight of one G^d edge before any dimer-side
  // computation, which must break the pushforward identities.
  bool corrupt_weights = false;
  bool include_bozonization = true;
};

// Exact identity checks. Per graph: pi, theta and eta pushforwards, eta fiber
// sizes, the double-current closed form against the convolution, Kasteleyn
// against enumeration, height/nesting joint laws (plane, at most 8 edges) and
// bozonization (plane, at most 10 edges). Dobrushin height laws on p3 and c4,
// single-cycle theta fibers on c4 and c6 are added when those graphs are in
// the suite.
VerificationReport run_verification_suite(const SuiteOptions& options = {});

// Individual checks, reused by the suite and the acceptance gate.
CheckResult check_pi_pushforward(const std::string& name, const EmbeddedGraph& g, bool corrupt = false);
CheckResult check_theta_pushforward(const std::string& name, const EmbeddedGraph& g);
CheckResult check_eta_pushforward(const std::string& name, const EmbeddedGraph& g);
CheckResult check_double_current_closed_form(const std::string& name, const EmbeddedGraph& g);
CheckResult check_kasteleyn(const std::string& name, const EmbeddedGraph& g);
CheckResult check_height_law(const std::string& name, const EmbeddedGraph& g);
CheckResult check_dobrushin_height_law(const std::string& name, const EmbeddedGraph& g, int a, int b);
CheckResult check_bozonization(const std::string& name, const EmbeddedGraph& g);
// Single odd cycle with 2m edges and alternating middle strands: 2 * 3^m.
CheckResult check_cycle_theta_fiber(int edges);

// ---- variance experiment

struct SizeEstimate {
  int n = 0;
  long long samples = 0;
  double var_s = 0.0;         // E[N_gamma]
  double stderr_s = 0.0;
  double var_s_direct = 0.0;  // mean of S_gamma^2 with fair cluster signs
  double stderr_direct = 0.0;
  double tau_int = 0.0;       // of N_gamma, in samples
  double steps_per_sample = 0.0;
  double visits_per_sample = 0.0;
  long long subadditivity_checked = 0;
  long long subadditivity_violations = 0;
  bool converged = true;
};

struct VarianceReport {
  ExperimentConfig config;
  double x = 0.0;
  std::vector<SizeEstimate> sizes;
  double slope = 0.0;  // least squares of var_s against log n
  double slope_stderr = 0.0;
  double target = 0.0;  // 1 / pi
  bool converged() const;
  // var_s and var_s_direct agree within 3 combined standard errors.
  bool estimators_agree() const;
  nlohmann::json to_json() const;
};

VarianceReport run_variance_experiment(const ExperimentConfig& config);

// Straight horizontal face path crossing the vertical edges of the first
// `length` columns of row 0 on torus_quotient(square_cell, n).
FacePath horizontal_path(const EmbeddedGraph& torus, int n, int length);

// N_gamma for a current: clusters whose odd edges cross the path an odd
// number of times.
int odd_cluster_count(const EmbeddedGraph& g, const Current& w, const FacePath& path);

// E[N_gamma] under the sourceless double-current measure on the n = 2 square
// torus with real weight x, by enumeration.
double exact_mean_odd_count_torus2(double x);

// ---- critical point of the square lattice

struct CriticalCheck {
  double duality_fixed_point = 0.0;  // x = (1 - x) / (1 + x)
  // Crossing of Z_antiperiodic / Z_periodic on L x L tori for L = 4 and 6.
  double crossing = 0.0;
  double tolerance = 0.01;
  bool passed() const;
};

// Z with periodic (twisted = false) or antiperiodic boundary conditions in
// one direction on the L x L square torus, by transfer matrix.
double square_torus_z(int l, double x, bool twisted);
CriticalCheck check_square_critical_point();

// ---- emission

std::string variance_csv(const VarianceReport& report);
// Hex SHA-1 in git blob form over the given text.
std::string provenance_hash(const std::string& text);
nlohmann::json with_provenance(nlohmann::json j);
// Writes CSV and JSON to the configured paths (when set).
void emit(const VarianceReport& report);
void write_text(const std::string& path, const std::string& text);

}  // namespace rcd
