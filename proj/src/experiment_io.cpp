#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

#include "rcd/experiments.hpp"

namespace rcd {

double ExperimentConfig::effective_x() const {
  if (x != 0.0) return x;
  if (lattice == "square") return std::sqrt(2.0) - 1.0;
  throw std::invalid_argument("no critical point known for lattice '" + lattice + "'");
}

void ExperimentConfig::validate() const {
  if (lattice != "square") throw std::invalid_argument("only the square lattice is supported");
  if (!(x == 0.0 || (x > 0.0 && x < 1.0))) throw std::invalid_argument("x must lie in (0, 1)");
  if (sizes.empty()) throw std::invalid_argument("at least one size is required");
  for (int n : sizes)
    if (n < 2) throw std::invalid_argument("sizes must be at least 2");
  if (samples < 1) throw std::invalid_argument("samples must be at least 1");
  if (batches < 2 || batches > samples) throw std::invalid_argument("batches must lie in [2, samples]");
  if (!(burn_in_sweeps >= 0)) throw std::invalid_argument("burn-in must be nonnegative");
  if (!(thin_sweeps > 0)) throw std::invalid_argument("thinning must be positive");
  if (!(tau_budget_divisor > 0)) throw std::invalid_argument("tau budget divisor must be positive");
}

nlohmann::json ExperimentConfig::to_json() const {
  return {{"lattice", lattice},
          {"x", x},
          {"sizes", sizes},
          {"samples", samples},
          {"burn_in_sweeps", burn_in_sweeps},
          {"thin_sweeps", thin_sweeps},
          {"batches", batches},
          {"seed", seed},
          {"tau_budget_divisor", tau_budget_divisor},
          {"csv_path", csv_path},
          {"json_path", json_path}};
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  static const std::set<std::string> known{"lattice", "x", "sizes", "samples", "burn_in_sweeps", "thin_sweeps",
                                           "batches", "seed", "tau_budget_divisor", "csv_path", "json_path"};
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw std::invalid_argument("unknown config key '" + key + "'");
  ExperimentConfig c;
  c.lattice = j.value("lattice", c.lattice);
  c.x = j.value("x", c.x);
  c.sizes = j.value("sizes", c.sizes);
  c.samples = j.value("samples", c.samples);
  c.burn_in_sweeps = j.value("burn_in_sweeps", c.burn_in_sweeps);
  c.thin_sweeps = j.value("thin_sweeps", c.thin_sweeps);
  c.batches = j.value("batches", c.batches);
  c.seed = j.value("seed", c.seed);
  c.tau_budget_divisor = j.value("tau_budget_divisor", c.tau_budget_divisor);
  c.csv_path = j.value("csv_path", c.csv_path);
  c.json_path = j.value("json_path", c.json_path);
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  return ExperimentConfig::from_json(nlohmann::json::parse(in));
}

nlohmann::json VarianceReport::to_json() const {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["kind"] = "variance";
  j["config"] = config.to_json();
  j["x"] = x;
  j["path"] = {{"direction", "horizontal"}, {"row", 0}, {"length", "n/2"}, {"homotopy", "open segment"}};
  j["results"] = nlohmann::json::array();
  for (const auto& s : sizes)
    j["results"].push_back({{"n", s.n},
                            {"samples", s.samples},
                            {"var_s_gamma", s.var_s},
                            {"stderr", s.stderr_s},
                            {"var_s_gamma_direct", s.var_s_direct},
                            {"stderr_direct", s.stderr_direct},
                            {"tau_int", s.tau_int},
                            {"steps_per_sample", s.steps_per_sample},
                            {"visits_per_sample", s.visits_per_sample},
                            {"subadditivity_checked", s.subadditivity_checked},
                            {"subadditivity_violations", s.subadditivity_violations},
                            {"converged", s.converged}});
  j["slope"] = slope;
  j["slope_stderr"] = slope_stderr;
  j["target"] = target;
  j["converged"] = converged();
  j["estimators_agree"] = estimators_agree();
  return j;
}

std::string variance_csv(const VarianceReport& report) {
  std::string out = "n,var_s_gamma,stderr,samples\n";
  char line[128];
  for (const auto& s : report.sizes) {
    std::snprintf(line, sizeof line, "%d,%.6f,%.6f,%lld\n", s.n, s.var_s, s.stderr_s, s.samples);
    out += line;
  }
  return out;
}

std::string provenance_hash(const std::string& text) {
  const std::string blob = "blob " + std::to_string(text.size()) + '\0' + text;
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(blob.data(), blob.size(), digest, &len, EVP_sha1(), nullptr))
    throw std::runtime_error("SHA-1 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

nlohmann::json with_provenance(nlohmann::json j) {
  j.erase("provenance");
  j["provenance"] = provenance_hash(j.dump());
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

void emit(const VarianceReport& report) {
  if (!report.config.csv_path.empty()) write_text(report.config.csv_path, variance_csv(report));
  if (!report.config.json_path.empty())
    write_text(report.config.json_path, with_provenance(report.to_json()).dump(2) + "\n");
}

}  // namespace rcd
