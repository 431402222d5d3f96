#pragma once

#include <string>

#include <json.hpp>

#include "qgeo/path.hpp"
#include "qgeo/space_graph.hpp"

namespace qgeo {

// Graph document: {family_tag, scale_h, vertices:[{id, x?, y?}], edges:[{a, b, len}]}.
// Serialization is canonical: vertices ascend by id, edges ascend by (a, b)
// with a < b, doubles in shortest round-trip form. Identical graphs produce
// identical bytes.
std::string graph_to_json_string(const SpaceGraph& g);
SpaceGraph graph_from_json(const nlohmann::json& j);
SpaceGraph graph_from_json_string(const std::string& text);
SpaceGraph load_graph(const std::string& file);
void save_graph(const SpaceGraph& g, const std::string& file);

// Path document: {graph_ref, vertex_ids:[...]}; graph_ref must match the
// host graph's family tag.
nlohmann::json path_to_json(const SpaceGraph& g, const PathInSpace& p);
PathInSpace path_from_json(const SpaceGraph& g, const nlohmann::json& j);
PathInSpace load_path(const SpaceGraph& g, const std::string& file);
void save_path(const SpaceGraph& g, const PathInSpace& p, const std::string& file);

std::string read_text_file(const std::string& file);
void write_text_file(const std::string& file, const std::string& content);

} // namespace qgeo
