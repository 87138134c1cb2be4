#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "rcd/experiments.hpp"
#include "rcd/graph_io.hpp"
#include "rcd/height.hpp"
#include "rcd/ising.hpp"
#include "rcd/kasteleyn.hpp"
#include "rcd/lattice.hpp"
#include "rcd/matching.hpp"
#include "rcd/moves.hpp"
#include "rcd/worm.hpp"

using namespace rcd;

namespace {

struct GraphArgs {
  std::string name = "c3";
  std::string file;

  void add(CLI::App* app) {
    app->add_option("--graph", name, "named graph (" + names() + ")");
    app->add_option("--file", file, "graph JSON file");
  }
  EmbeddedGraph load() const { return file.empty() ? named_graph(name) : load_graph_file(file); }
  static std::string names() {
    return "edge, p3, c3, c4, c5, c6, bowtie, k4, theta, grid2x3, torus2";
  }
};

SourceSet parse_sources(const std::vector<int>& v) { return v.empty() ? SourceSet{} : SourceSet(v); }

std::string describe(const Current& w) {
  std::string s;
  for (auto e : w.edges) s += e == EdgeState::odd ? 'o' : e == EdgeState::even ? 'e' : '.';
  return s;
}

nlohmann::json dimer_json(const DimerGraph& dg) {
  nlohmann::json j;
  j["graph"] = graph_to_json(dg.graph);
  j["gauge"] = to_string(dg.gauge);
  j["marked_edge"] = dg.marked_edge;
  static const char* kinds[] = {"short", "long", "added"};
  j["edges"] = nlohmann::json::array();
  for (int e = 0; e < dg.num_edges(); ++e)
    j["edges"].push_back({{"id", e},
                          {"kind", kinds[static_cast<int>(dg.kind[e])]},
                          {"directed_edge", dg.directed_edge[e]},
                          {"original_edge", dg.original_edge[e]}});
  j["vertices"] = nlohmann::json::array();
  for (int v = 0; v < dg.num_vertices(); ++v)
    j["vertices"].push_back({{"id", v}, {"white", dg.white[v] != 0}, {"base_vertex", dg.base_vertex[v]}});
  return j;
}

nlohmann::json directed_json(const DirectedGraphTriple& t) {
  nlohmann::json j;
  j["carrier"] = graph_to_json(t.carrier);
  static const char* roles[] = {"s1", "m", "s2", "boundary"};
  j["edges"] = nlohmann::json::array();
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    const auto& d = t.edges[i];
    j["edges"].push_back({{"id", i},
                          {"base_edge", d.base_edge},
                          {"role", roles[static_cast<int>(d.role)]},
                          {"tail", d.tail},
                          {"head", d.head},
                          {"weight", to_string(d.weight)}});
  }
  return j;
}

void print_checks(const VerificationReport& r) {
  for (const auto& c : r.checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.graph << " " << c.identity << " (" << c.configurations
              << " configurations)";
    if (!c.passed) std::cout << "\n     witness: " << c.witness;
    std::cout << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double random currents and dimers: exact identities and Monte Carlo"};
  app.require_subcommand(1);
  int status = 0;

  // verify
  auto* verify = app.add_subcommand("verify", "run the exact verification suite");
  std::vector<std::string> suite_graphs;
  bool corrupt = false;
  std::string verify_json;
  verify->add_option("--graphs", suite_graphs, "graphs to check (default: the suite)")->delimiter(',');
  verify->add_flag("--corrupt", corrupt, "test mode: corrupt one dimer weight");
  verify->add_option("--json", verify_json, "write the report here");
  verify->callback([&] {
    SuiteOptions o;
    o.graphs = suite_graphs;
    o.corrupt_weights = corrupt;
    auto r = run_verification_suite(o);
    print_checks(r);
    if (!verify_json.empty()) write_text(verify_json, r.to_json().dump(2) + "\n");
    std::cout << (r.all_passed() ? "all checks passed" : "some checks failed") << "\n";
    status = r.all_passed() ? 0 : 1;
  });

  // variance
  auto* variance = app.add_subcommand("variance", "variance of the nesting field increment on tori");
  ExperimentConfig cfg;
  std::string config_path;
  variance->add_option("--config", config_path, "JSON config file (command-line options override it)");
  variance->add_option("--lattice", cfg.lattice, "lattice family")->capture_default_str();
  variance->add_option("--x", cfg.x, "edge weight (default: critical)");
  variance->add_option("--sizes", cfg.sizes, "torus sizes")->delimiter(',');
  variance->add_option("--samples", cfg.samples, "samples per size")->capture_default_str();
  variance->add_option("--burn-in", cfg.burn_in_sweeps, "burn-in sweeps")->capture_default_str();
  variance->add_option("--thin", cfg.thin_sweeps, "sweeps between samples")->capture_default_str();
  variance->add_option("--batches", cfg.batches, "batches for standard errors")->capture_default_str();
  variance->add_option("--seed", cfg.seed, "master seed")->capture_default_str();
  variance->add_option("--csv", cfg.csv_path, "CSV output path");
  variance->add_option("--json", cfg.json_path, "JSON output path");
  variance->callback([&] {
    ExperimentConfig c = cfg;
    if (!config_path.empty()) {
      c = load_config(config_path);
      for (const auto* opt : variance->get_options()) {
        if (opt->count() == 0) continue;
        const auto& n = opt->get_name();
        if (n == "--lattice") c.lattice = cfg.lattice;
        if (n == "--x") c.x = cfg.x;
        if (n == "--sizes") c.sizes = cfg.sizes;
        if (n == "--samples") c.samples = cfg.samples;
        if (n == "--burn-in") c.burn_in_sweeps = cfg.burn_in_sweeps;
        if (n == "--thin") c.thin_sweeps = cfg.thin_sweeps;
        if (n == "--batches") c.batches = cfg.batches;
        if (n == "--seed") c.seed = cfg.seed;
        if (n == "--csv") c.csv_path = cfg.csv_path;
        if (n == "--json") c.json_path = cfg.json_path;
      }
    }
    auto r = run_variance_experiment(c);
    emit(r);
    std::cout << variance_csv(r);
    std::cout << "x = " << r.x << "\nslope = " << r.slope << " +- " << r.slope_stderr << " (1/pi = " << r.target
              << ", 1/pi^2 = " << 1 / (std::numbers::pi * std::numbers::pi) << ")\n";
    long long violations = 0;
    for (const auto& s : r.sizes) {
      violations += s.subadditivity_violations;
      std::cout << "n = " << s.n << ": tau_int " << s.tau_int << ", direct estimate " << s.var_s_direct << " +- "
                << s.stderr_direct << "\n";
    }
    std::cout << "converged: " << (r.converged() ? "yes" : "no")
              << ", estimators agree: " << (r.estimators_agree() ? "yes" : "no")
              << ", subadditivity violations: " << violations << "\n";
    status = r.converged() && r.estimators_agree() && violations == 0 ? 0 : 1;
  });

  // transform
  auto* transform = app.add_subcommand("transform", "emit a derived graph with its back-maps");
  GraphArgs tg;
  tg.add(transform);
  std::string target = "dimer";
  std::vector<int> dob;
  transform->add_option("--to", target, "directed, dimer or cg")->check(CLI::IsMember({"directed", "dimer", "cg"}));
  transform->add_option("--dobrushin", dob, "a,b on the outer face")->delimiter(',')->expected(2);
  transform->callback([&] {
    auto t = to_directed(tg.load());
    if (!dob.empty()) t = augment_dobrushin(t, dob[0], dob[1]);
    nlohmann::json out;
    if (target == "directed") out = directed_json(t);
    else if (target == "dimer") out = dimer_json(to_dimer_graph(t));
    else out = dimer_json(to_cg(to_dimer_graph(t), t));
    std::cout << out.dump(2) << "\n";
  });

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "list configurations with weights as CSV");
  GraphArgs eg;
  eg.add(enumerate);
  std::string model = "dcurr";
  std::vector<int> sources;
  enumerate->add_option("--model", model, "curr, dcurr or dimer")->check(CLI::IsMember({"curr", "dcurr", "dimer"}));
  enumerate->add_option("--sources", sources, "source vertices")->delimiter(',');
  enumerate->callback([&] {
    auto g = eg.load();
    std::cout << "configuration,weight\n";
    if (model == "dimer") {
      auto dg = to_dimer_graph(to_directed(g));
      for_each_matching(dg, [&](const DimerCover& m) {
        std::string s;
        for (std::size_t i = 0; i < m.edges.size(); ++i) s += (i ? " " : "") + std::to_string(m.edges[i]);
        std::cout << s << "," << to_string(dimer_measure_weight(dg, m)) << "\n";
      });
      return;
    }
    auto field = current_field(g);
    for_each_current(g, parse_sources(sources), [&](const Current& w) {
      std::cout << describe(w) << ",";
      if (model == "dcurr") std::cout << to_string(double_current_weight(g, w)) << "\n";
      else std::cout << current_weight(g, w, field).to_double() << "\n";
    });
  });

  // sample
  auto* sample = app.add_subcommand("sample", "stream worm-sampled currents");
  GraphArgs sg;
  sg.add(sample);
  long long count = 10, thin = 0, burn = kDefaultBurnIn;
  std::uint64_t seed = 1;
  std::vector<int> sample_sources;
  std::string sample_model = "curr";
  sample->add_option("--model", sample_model, "curr, dcurr or dimer")->check(CLI::IsMember({"curr", "dcurr", "dimer"}));
  sample->add_option("--sources", sample_sources, "source vertices")->delimiter(',');
  sample->add_option("--count", count, "number of samples")->capture_default_str();
  sample->add_option("--thin", thin, "closed visits between samples (0: |E|)");
  sample->add_option("--burn-in", burn, "burn-in sweeps")->capture_default_str();
  sample->add_option("--seed", seed, "seed")->capture_default_str();
  sample->callback([&] {
    auto g = sg.load();
    auto b = parse_sources(sample_model == "curr" ? sample_sources : std::vector<int>{});
    WormSampler first(g, b, chain_seed(seed, 0)), second(g, {}, chain_seed(seed, 1));
    first.advance(burn * g.num_edges());
    second.advance(burn * g.num_edges());
    auto t = to_directed(g);
    auto dg = sample_model == "dimer" ? to_dimer_graph(t) : DimerGraph{};
    std::mt19937_64 rng(chain_seed(seed, 2));
    for (long long i = 0; i < count; ++i) {
      Current w = first.sample(thin);
      if (sample_model == "curr") {
        std::cout << describe(w) << "\n";
        continue;
      }
      w = sum_currents(g, w, second.sample(thin));
      if (sample_model == "dcurr") {
        std::cout << describe(w) << "\n";
        continue;
      }
      auto m = sample_dimer_via_current(t, dg, w, rng);
      for (std::size_t k = 0; k < m.edges.size(); ++k) std::cout << (k ? " " : "") << m.edges[k];
      std::cout << "\n";
    }
  });

  // bozonize
  auto* bozonize = app.add_subcommand("bozonize", "both sides of the bozonization identity");
  GraphArgs bg;
  bg.add(bozonize);
  std::vector<int> spins, line_faces;
  bozonize->add_option("--spins", spins, "spin vertices")->delimiter(',');
  bozonize->add_option("--lines", line_faces, "end faces of disorder lines from the unbounded face")->delimiter(',');
  bozonize->callback([&] {
    IsingModel m(bg.load());
    std::vector<DisorderLine> lines;
    for (int f : line_faces)
      lines.push_back(DisorderLine::along(m.graph(), shortest_face_path(m.graph(), m.graph().outer_face(), f)));
    const Rational lhs = correlation(m, spins, lines);
    const Rational rhs = bozonization_rhs(m, spins, lines);
    std::cout << "LHS^2 = " << to_string(lhs * lhs) << "\nRHS   = " << to_string(rhs) << "\n"
              << (lhs * lhs == rhs ? "identity holds" : "identity FAILS") << "\n";
    status = lhs * lhs == rhs ? 0 : 1;
  });

  // z
  auto* z = app.add_subcommand("z", "partition functions");
  GraphArgs zg;
  zg.add(z);
  z->callback([&] {
    auto g = zg.load();
    auto dg = to_dimer_graph(to_directed(g));
    Rational zd = 0;
    for_each_current(g, SourceSet{}, [&](const Current& w) { zd += double_current_weight(g, w); });
    const Rational ze = matching_partition_function(dg);
    const double zk = kasteleyn_z(dg);
    std::cout << "Z_dimer (enumeration) = " << to_string(ze) << " ~ " << to_double(ze) << "\n"
              << "Z_dimer (Kasteleyn)   = " << zk << "\n"
              << "Z_double_current      = " << to_string(zd) << "\n";
    const double rel = std::abs(zk - to_double(ze)) / to_double(ze);
    std::cout << "relative error " << rel << "\n";
    status = rel < 1e-9 ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return status;
}
