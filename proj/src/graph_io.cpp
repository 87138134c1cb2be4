#include "rcd/graph_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace rcd {

using nlohmann::json;

json graph_to_json(const EmbeddedGraph& g) {
  json j;
  j["topology"] = g.topology() == Topology::plane ? "plane" : "torus";
  j["base_graph"] = g.is_base_graph();
  json vertices = json::array();
  for (int v = 0; v < g.num_vertices(); ++v) vertices.push_back(v);
  j["vertices"] = vertices;
  json half_edges = json::array();
  for (int h = 0; h < g.num_half_edges(); ++h)
    half_edges.push_back({{"id", h}, {"twin", EmbeddedGraph::twin(h)}, {"vertex", g.origin(h)},
                          {"next_at_vertex", g.rot_next(h)}});
  j["half_edges"] = half_edges;
  json edges = json::array();
  for (int e = 0; e < g.num_edges(); ++e)
    edges.push_back({{"id", e}, {"half_edges", {2 * e, 2 * e + 1}}, {"weight", to_string(g.weight(e))}});
  j["edges"] = edges;
  if (g.outer_face() >= 0) j["outer_face"] = g.outer_face();
  if (g.topology() == Topology::torus) {
    json x = json::array(), y = json::array();
    for (int e = 0; e < g.num_edges(); ++e) {
      Shift s = g.shift(2 * e);
      if (s.dx) x.push_back({e, s.dx});
      if (s.dy) y.push_back({e, s.dy});
    }
    j["torus_cuts"] = {{"x", x}, {"y", y}};
  }
  return j;
}

EmbeddedGraph graph_from_json(const json& j) {
  try {
    GraphInput in;
    const std::string topo = j.at("topology").get<std::string>();
    if (topo == "plane")
      in.topology = Topology::plane;
    else if (topo == "torus")
      in.topology = Topology::torus;
    else
      throw GraphError("unknown topology '" + topo + "'");
    in.base_graph = j.value("base_graph", true);

    std::map<long, int> vertex_index;
    for (const auto& v : j.at("vertices")) {
      long id = v.get<long>();
      if (!vertex_index.emplace(id, static_cast<int>(vertex_index.size())).second)
        throw GraphError("duplicate vertex id");
    }
    in.num_vertices = static_cast<int>(vertex_index.size());

    // Internal half-edge ids: sides of each edge in file order.
    std::map<long, int> half_index;
    const auto& edges = j.at("edges");
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const auto& hs = edges[e].at("half_edges");
      if (hs.size() != 2) throw GraphError("edge must list exactly two half-edges");
      for (int side = 0; side < 2; ++side)
        if (!half_index.emplace(hs[side].get<long>(), static_cast<int>(2 * e + side)).second)
          throw GraphError("half-edge listed by two edges");
      in.weights.push_back(parse_rational(edges[e].at("weight").get<std::string>()));
    }

    const int hn = static_cast<int>(half_index.size());
    std::vector<int> vertex_of(hn, -1), next(hn, -1);
    const auto& half_edges = j.at("half_edges");
    if (static_cast<int>(half_edges.size()) != hn) throw GraphError("half-edge table does not match edges");
    auto lookup = [&](long id) {
      auto it = half_index.find(id);
      if (it == half_index.end()) throw GraphError("unknown half-edge id " + std::to_string(id));
      return it->second;
    };
    for (const auto& h : half_edges) {
      int idx = lookup(h.at("id").get<long>());
      if (lookup(h.at("twin").get<long>()) != EmbeddedGraph::twin(idx))
        throw GraphError("twin link disagrees with the edge table");
      auto vit = vertex_index.find(h.at("vertex").get<long>());
      if (vit == vertex_index.end()) throw GraphError("half-edge references unknown vertex");
      vertex_of[idx] = vit->second;
      next[idx] = lookup(h.at("next_at_vertex").get<long>());
    }

    in.rotations.assign(in.num_vertices, {});
    std::vector<char> used(hn, 0);
    for (int h = 0; h < hn; ++h) {
      if (used[h]) continue;
      const int v = vertex_of[h];
      if (!in.rotations[v].empty()) throw GraphError("rotation at a vertex is not a single cycle");
      int cur = h;
      do {
        if (used[cur] || vertex_of[cur] != v) throw GraphError("inconsistent rotation system");
        used[cur] = 1;
        in.rotations[v].push_back(cur);
        cur = next[cur];
      } while (cur != h);
    }

    if (in.topology == Topology::torus) {
      in.shifts.assign(in.weights.size(), Shift{});
      if (j.contains("torus_cuts")) {
        for (const auto& c : j["torus_cuts"].value("x", json::array()))
          in.shifts.at(c.at(0).get<int>()).dx = c.at(1).get<int>();
        for (const auto& c : j["torus_cuts"].value("y", json::array()))
          in.shifts.at(c.at(0).get<int>()).dy = c.at(1).get<int>();
      }
    }

    if (in.topology == Topology::plane && !in.weights.empty()) {
      GraphInput probe_in = in;
      probe_in.outer_half_edge = 0;
      probe_in.base_graph = false;
      EmbeddedGraph probe(probe_in);
      int f = j.value("outer_face", -1);
      if (f < 0 || f >= probe.num_faces()) throw GraphError("plane graph needs a valid outer_face");
      in.outer_half_edge = probe.face_boundary(f).front();
    }
    return EmbeddedGraph(std::move(in));
  } catch (const json::exception& e) {
    throw GraphError(std::string("malformed graph JSON: ") + e.what());
  }
}

std::string serialize_graph(const EmbeddedGraph& g) { return graph_to_json(g).dump(1) + "\n"; }

EmbeddedGraph parse_graph(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw GraphError(std::string("malformed graph JSON: ") + e.what());
  }
  return graph_from_json(j);
}

EmbeddedGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

}  // namespace rcd
