#pragma once

#include <string>

#include <json.hpp>

#include "rcd/embedded_graph.hpp"

namespace rcd {

// Graph file format:
//   {topology, vertices:[id], half_edges:[{id,twin,vertex,next_at_vertex}],
//    edges:[{id,half_edges:[h1,h2],weight:"p/q"}], outer_face?, torus_cuts?}
// torus_cuts = {"x": [[edge, count], ...], "y": [...]} lists the signed
// number of crossings of each cut by half_edges[0] of the edge.
nlohmann::json graph_to_json(const EmbeddedGraph& g);
EmbeddedGraph graph_from_json(const nlohmann::json& j);

std::string serialize_graph(const EmbeddedGraph& g);
EmbeddedGraph parse_graph(const std::string& text);
EmbeddedGraph load_graph_file(const std::string& path);

}  // namespace rcd
