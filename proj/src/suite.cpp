#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "rcd/experiments.hpp"
#include "rcd/flow.hpp"
#include "rcd/height.hpp"
#include "rcd/ising.hpp"
#include "rcd/kasteleyn.hpp"
#include "rcd/lattice.hpp"
#include "rcd/matching.hpp"

namespace rcd {

namespace {

using CurrentLaw = std::map<std::vector<EdgeState>, Rational>;

std::string describe(const std::vector<EdgeState>& edges) {
  std::string s;
  for (auto e : edges) s += e == EdgeState::odd ? 'o' : e == EdgeState::even ? 'e' : '.';
  return s;
}

std::string describe(const std::vector<Rational>& values) {
  std::string s = "(";
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + to_string(values[i]);
  return s + ")";
}

std::string describe(const AlternatingFlow& f) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (std::size_t i = 0; i < f.mask.size(); ++i)
    if (f.mask[i]) {
      out << (first ? "" : ",") << i;
      first = false;
    }
  out << "}";
  return out.str();
}

template <class Key>
void normalize(std::map<Key, Rational>& law) {
  Rational z = 0;
  for (auto& [k, p] : law) z += p;
  if (z == 0) return;
  for (auto& [k, p] : law) p /= z;
}

// Compares two normalized laws key by key over the union of their supports.
template <class Key>
CheckResult compare_laws(CheckResult r, const std::map<Key, Rational>& lhs, const std::map<Key, Rational>& rhs,
                         const char* lhs_name, const char* rhs_name) {
  auto at = [](const std::map<Key, Rational>& law, const Key& k) {
    auto it = law.find(k);
    return it == law.end() ? Rational(0) : it->second;
  };
  std::map<Key, char> keys;
  for (const auto& [k, p] : lhs) keys[k] = 1;
  for (const auto& [k, p] : rhs) keys[k] = 1;
  r.configurations = static_cast<long long>(keys.size());
  r.passed = true;
  for (const auto& [k, unused] : keys) {
    Rational a = at(lhs, k), b = at(rhs, k);
    if (a != b) {
      r.passed = false;
      r.witness = describe(k) + ": " + lhs_name + " " + to_string(a) + ", " + rhs_name + " " + to_string(b);
      break;
    }
  }
  return r;
}

CheckResult start(const std::string& graph, const std::string& identity) {
  CheckResult r;
  r.graph = graph;
  r.identity = identity;
  return r;
}

void corrupt(DimerGraph& dg) {
  auto w = dg.graph.weights();
  w[0] *= 2;
  dg.graph = with_weights(dg.graph, std::move(w));
}

// On the torus pi and theta only reach currents with a nonempty theta-fiber;
// the double-current side is conditioned on that event.
CurrentLaw double_current_law(const DirectedGraphTriple& t, const SourceSet& b = {}) {
  CurrentLaw law;
  const bool torus = t.base.topology() == Topology::torus;
  for (const auto& w : enumerate_currents(t.base, b)) {
    if (torus && theta_fiber(t, w).empty()) continue;
    law[w.edges] = double_current_weight(t.base, w);
  }
  normalize(law);
  return law;
}

using FaceLaw = std::map<std::vector<Rational>, Rational>;

std::vector<Rational> restrict_to_base_faces(const DirectedGraphTriple& t, const std::vector<Rational>& v) {
  std::vector<Rational> out;
  for (int f : base_faces(t)) out.push_back(v[f]);
  return out;
}

FaceLaw height_law(const DirectedGraphTriple& t, const DimerGraph& dg) {
  FaceLaw law;
  for_each_matching(dg, [&](const DimerCover& m) {
    law[restrict_to_base_faces(t, on_carrier_faces(dg, height(t, dg, m)))] += dimer_measure_weight(dg, m);
  });
  normalize(law);
  return law;
}

FaceLaw nesting_law(const DirectedGraphTriple& t) {
  FaceLaw law;
  const auto& g = t.base;
  SourceSet b = t.dobrushin ? SourceSet::pair(t.dobrushin->first, t.dobrushin->second) : SourceSet{};
  for (const auto& w : enumerate_currents(g, b)) {
    auto c = clusters(g, w);
    const Rational share = double_current_weight(g, w) / Rational(1ul << c.count);
    for (unsigned long mask = 0; mask < (1ul << c.count); ++mask) {
      std::vector<int> xi(c.count);
      for (int k = 0; k < c.count; ++k) xi[k] = (mask >> k & 1) ? -1 : 1;
      auto s = nesting_field(t, w, xi).value;
      law[restrict_to_base_faces(t, std::vector<Rational>(s.begin(), s.end()))] += share;
    }
  }
  normalize(law);
  return law;
}

CheckResult height_check(CheckResult r, const DirectedGraphTriple& t) {
  return compare_laws(std::move(r), height_law(t, to_dimer_graph(t)), nesting_law(t), "height", "nesting");
}

// A shortest line to every face, and the same line extended once around a
// vertex (same end point, different crossings).
std::vector<DisorderLine> lines_to_every_face(const EmbeddedGraph& g) {
  std::vector<DisorderLine> out;
  int pivot = -1;
  for (int v = 0; v < g.num_vertices() && pivot < 0; ++v)
    if (g.degree(v) > 0) pivot = v;
  for (int f = 0; f < g.num_faces(); ++f) {
    auto l = DisorderLine::along(g, shortest_face_path(g, g.outer_face(), f));
    out.push_back(l);
    if (pivot < 0) continue;
    for (int h : g.rotation(pivot)) l.crossed.push_back(EmbeddedGraph::edge_of(h));
    out.push_back(l);
  }
  return out;
}

bool is_plane(const EmbeddedGraph& g) { return g.topology() == Topology::plane; }

}  // namespace

CheckResult check_pi_pushforward(const std::string& name, const EmbeddedGraph& g, bool corrupt_weights) {
  auto t = to_directed(g);
  auto dg = to_dimer_graph(t);
  if (corrupt_weights) corrupt(dg);
  CurrentLaw push;
  for_each_matching(dg, [&](const DimerCover& m) { push[pi(t, dg, m).edges] += dimer_measure_weight(dg, m); });
  normalize(push);
  return compare_laws(start(name, "pi_pushforward"), push, double_current_law(t), "dimer", "double-current");
}

CheckResult check_theta_pushforward(const std::string& name, const EmbeddedGraph& g) {
  auto t = to_directed(g);
  CurrentLaw push;
  for_each_flow(t, [&](const AlternatingFlow& f) { push[theta(t, f).edges] += flow_weight(t, f); });
  normalize(push);
  return compare_laws(start(name, "theta_pushforward"), push, double_current_law(t), "flow", "double-current");
}

CheckResult check_eta_pushforward(const std::string& name, const EmbeddedGraph& g) {
  auto t = to_directed(g);
  auto dg = to_dimer_graph(t);
  std::map<AlternatingFlow, Rational> push, flows;
  std::map<AlternatingFlow, long long> preimages;
  for_each_matching(dg, [&](const DimerCover& m) {
    auto f = eta(t, dg, m);
    push[f] += dimer_measure_weight(dg, m);
    ++preimages[f];
  });
  normalize(push);
  for_each_flow(t, [&](const AlternatingFlow& f) { flows[f] = flow_weight(t, f); });
  normalize(flows);
  auto r = compare_laws(start(name, "eta_pushforward"), push, flows, "dimer", "flow");
  if (!r.passed) return r;
  for (const auto& [f, p] : flows) {
    const long long want = 1ll << isolated_vertices(t, f).size();
    if (preimages[f] != want) {
      r.passed = false;
      r.witness = "flow " + describe(f) + ": " + std::to_string(preimages[f]) + " preimages, expected " +
                  std::to_string(want);
      break;
    }
  }
  return r;
}

CheckResult check_double_current_closed_form(const std::string& name, const EmbeddedGraph& g) {
  CheckResult r = start(name, "double_current_closed_form");
  r.passed = true;
  auto field = current_field(g);
  auto without = enumerate_currents(g, {});
  std::vector<QuadraticNumber> w0;
  QuadraticNumber z0(field, Rational(0));
  for (const auto& w : without) {
    w0.push_back(current_weight(g, w, field));
    z0 += w0.back();
  }
  std::vector<SourceSet> source_sets{SourceSet{}};
  if (g.num_vertices() >= 2) source_sets.push_back(SourceSet::pair(0, 1));
  for (const auto& b : source_sets) {
    auto with_b = b.empty() ? without : enumerate_currents(g, b);
    std::vector<QuadraticNumber> wb;
    QuadraticNumber zb(field, Rational(0));
    for (const auto& w : with_b) {
      wb.push_back(current_weight(g, w, field));
      zb += wb.back();
    }
    std::map<std::vector<EdgeState>, QuadraticNumber> conv;
    for (std::size_t i = 0; i < with_b.size(); ++i)
      for (std::size_t j = 0; j < without.size(); ++j) {
        auto s = sum_currents(g, with_b[i], without[j]);
        auto it = conv.find(s.edges);
        if (it == conv.end()) it = conv.emplace(s.edges, QuadraticNumber(field, Rational(0))).first;
        it->second += wb[i] * w0[j];
      }
    CurrentLaw closed;
    for (const auto& w : with_b) closed[w.edges] = double_current_weight(g, w);
    normalize(closed);
    const QuadraticNumber zz = zb * z0;
    r.configurations += static_cast<long long>(closed.size());
    for (const auto& [cfg, p] : closed) {
      auto it = conv.find(cfg);
      QuadraticNumber c = it == conv.end() ? QuadraticNumber(field, Rational(0)) : it->second;
      if (!(c == zz * QuadraticNumber(field, p))) {
        r.passed = false;
        r.witness = describe(cfg) + ": closed form " + to_string(p) + ", convolution " +
                    std::to_string(c.to_double() / zz.to_double());
        return r;
      }
    }
    if (conv.size() != closed.size()) {
      r.passed = false;
      r.witness = "convolution support has " + std::to_string(conv.size()) + " currents, closed form " +
                  std::to_string(closed.size());
      return r;
    }
  }
  return r;
}

CheckResult check_kasteleyn(const std::string& name, const EmbeddedGraph& g) {
  CheckResult r = start(name, "kasteleyn");
  auto dg = to_dimer_graph(to_directed(g));
  const double z_enum = to_double(matching_partition_function(dg));
  const double z_k = kasteleyn_z(dg);
  const double rel = std::abs(z_k - z_enum) / z_enum;
  r.configurations = 1;
  r.passed = rel < 1e-9;
  if (!r.passed) {
    std::ostringstream out;
    out.precision(17);
    out << "Z_kasteleyn " << z_k << ", Z_enumeration " << z_enum << ", relative error " << rel;
    r.witness = out.str();
  }
  return r;
}

CheckResult check_height_law(const std::string& name, const EmbeddedGraph& g) {
  return height_check(start(name, "height_nesting_law"), to_directed(g));
}

CheckResult check_dobrushin_height_law(const std::string& name, const EmbeddedGraph& g, int a, int b) {
  auto t = augment_dobrushin(to_directed(g), a, b);
  return height_check(start(name, "dobrushin_height_nesting_law(" + std::to_string(a) + "," + std::to_string(b) + ")"),
                      t);
}

CheckResult check_bozonization(const std::string& name, const EmbeddedGraph& g) {
  CheckResult r = start(name, "bozonization");
  r.passed = true;
  IsingModel m(g);
  std::vector<std::vector<DisorderLine>> line_sets{{}};
  for (const auto& l : lines_to_every_face(g)) line_sets.push_back({l});
  std::vector<std::vector<int>> spin_sets{{}};
  for (int a = 0; a < g.num_vertices(); ++a)
    for (int b = a + 1; b < g.num_vertices(); ++b) spin_sets.push_back({a, b});
  for (std::size_t li = 0; li < line_sets.size(); ++li)
    for (const auto& xs : spin_sets) {
      ++r.configurations;
      const Rational lhs = correlation(m, xs, line_sets[li]);
      const Rational rhs = bozonization_rhs(m, xs, line_sets[li]);
      if (lhs * lhs != rhs) {
        r.passed = false;
        std::ostringstream out;
        out << "X = {";
        for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? "," : "") << xs[i];
        out << "}, " << line_sets[li].size() << " line(s)";
        if (!line_sets[li].empty()) out << " ending at face " << line_sets[li][0].end_face;
        out << ": spin side squared " << to_string(lhs * lhs) << ", dimer side " << to_string(rhs);
        r.witness = out.str();
        return r;
      }
    }
  return r;
}

CheckResult check_cycle_theta_fiber(int edges) {
  CheckResult r = start("c" + std::to_string(edges), "single_cycle_theta_fiber");
  auto g = cycle_graph(edges, mixed_weights(edges));
  auto t = to_directed(g, [](const EmbeddedGraph&, int e) { return e % 2 == 0; });
  Current w = Current::empty(g);
  std::fill(w.edges.begin(), w.edges.end(), EdgeState::odd);
  long long want = 2;
  for (int i = 0; i < edges / 2; ++i) want *= 3;
  const auto got = static_cast<long long>(theta_fiber(t, w).size());
  r.configurations = got;
  r.passed = got == want;
  if (!r.passed) r.witness = std::to_string(got) + " flows, expected " + std::to_string(want);
  return r;
}

bool VerificationReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["kind"] = "verification";
  j["all_passed"] = all_passed();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"graph", c.graph},
                           {"identity", c.identity},
                           {"passed", c.passed},
                           {"configurations", c.configurations},
                           {"witness", c.witness}});
  return j;
}

VerificationReport VerificationReport::from_json(const nlohmann::json& j) {
  if (j.at("schema").get<std::string>() != kReportSchema) throw std::invalid_argument("unsupported report schema");
  VerificationReport r;
  for (const auto& c : j.at("checks")) {
    CheckResult x;
    x.graph = c.at("graph").get<std::string>();
    x.identity = c.at("identity").get<std::string>();
    x.passed = c.at("passed").get<bool>();
    x.configurations = c.at("configurations").get<long long>();
    x.witness = c.at("witness").get<std::string>();
    r.checks.push_back(std::move(x));
  }
  return r;
}

VerificationReport run_verification_suite(const SuiteOptions& options) {
  VerificationReport report;
  auto names = options.graphs.empty() ? suite_graph_names() : options.graphs;
  auto has = [&](const std::string& n) { return std::find(names.begin(), names.end(), n) != names.end(); };
  for (const auto& name : names) {
    auto g = named_graph(name);
    report.checks.push_back(check_pi_pushforward(name, g, options.corrupt_weights));
    report.checks.push_back(check_theta_pushforward(name, g));
    report.checks.push_back(check_eta_pushforward(name, g));
    report.checks.push_back(check_double_current_closed_form(name, g));
    report.checks.push_back(check_kasteleyn(name, g));
    if (is_plane(g) && g.num_edges() <= 8) report.checks.push_back(check_height_law(name, g));
    if (options.include_bozonization && is_plane(g) && g.num_edges() <= 10)
      report.checks.push_back(check_bozonization(name, g));
  }
  if (has("p3")) report.checks.push_back(check_dobrushin_height_law("p3", named_graph("p3"), 0, 2));
  if (has("c4")) {
    report.checks.push_back(check_dobrushin_height_law("c4", named_graph("c4"), 0, 2));
    report.checks.push_back(check_cycle_theta_fiber(4));
  }
  if (options.graphs.empty()) report.checks.push_back(check_cycle_theta_fiber(6));
  return report;
}

}  // namespace rcd
