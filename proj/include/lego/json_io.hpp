#pragma once

#include <string>

#include <json.hpp>

#include "lego/graph.hpp"
#include "lego/worlds.hpp"

namespace lego {

// ordered_json keeps key insertion order, so identical inputs serialize to
// byte-identical text.
using Json = nlohmann::ordered_json;

Json world_to_json(const World& w);
World world_from_json(const Json& j);

Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

void save_world(const World& w, const std::string& path);
World load_world(const std::string& path);

}  // namespace lego
