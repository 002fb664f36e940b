#include "lego/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace lego {

Json world_to_json(const World& w) {
  Json j;
  j["dim"] = w.dim;
  if (w.kinematics.type == KinematicsType::Point2D) {
    j["kinematics"] = {{"type", "point2d"}};
  } else {
    j["kinematics"] = {{"type", "nlink_snake"},
                       {"n_links", w.kinematics.n_links},
                       {"link_length", w.kinematics.link_length}};
  }
  Json obs = Json::array();
  for (const Rect& r : w.obstacles) obs.push_back({r.min_x, r.min_y, r.max_x, r.max_y});
  j["obstacles"] = std::move(obs);
  j["seed"] = w.seed;
  return j;
}

World world_from_json(const Json& j) {
  World w;
  w.dim = j.at("dim").get<int>();
  const Json& kin = j.at("kinematics");
  std::string type = kin.at("type").get<std::string>();
  if (type == "point2d") {
    w.kinematics.type = KinematicsType::Point2D;
  } else if (type == "nlink_snake") {
    w.kinematics.type = KinematicsType::NLinkSnake;
    w.kinematics.n_links = kin.at("n_links").get<int>();
    w.kinematics.link_length = kin.at("link_length").get<double>();
  } else {
    throw std::runtime_error("world_from_json: unknown kinematics type " + type);
  }
  for (const Json& r : j.at("obstacles"))
    w.obstacles.push_back({r.at(0).get<double>(), r.at(1).get<double>(), r.at(2).get<double>(),
                           r.at(3).get<double>()});
  w.seed = j.at("seed").get<std::uint64_t>();
  return w;
}

Json graph_to_json(const Graph& g) {
  Json j;
  j["vertices"] = g.vertices;
  Json edges = Json::array();
  for (int u = 0; u < g.size(); ++u)
    for (const HalfEdge& e : g.adj[u])
      if (u < e.to)
        edges.push_back({u, e.to, e.weight, e.tag == EdgeTag::Sparse ? "sparse" : "added"});
  j["edges"] = std::move(edges);
  j["radius"] = g.connect_radius;
  return j;
}

Graph graph_from_json(const Json& j) {
  Graph g;
  for (const Json& v : j.at("vertices")) g.vertices.push_back(v.get<Config>());
  g.adj.resize(g.vertices.size());
  g.connect_radius = j.at("radius").get<double>();
  for (const Json& e : j.at("edges")) {
    std::string tag = e.at(3).get<std::string>();
    g.add_edge(e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>(),
               tag == "sparse" ? EdgeTag::Sparse : EdgeTag::Added);
  }
  return g;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path);
  return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

void save_world(const World& w, const std::string& path) {
  write_text_file(path, world_to_json(w).dump(2) + "\n");
}

World load_world(const std::string& path) {
  return world_from_json(Json::parse(read_text_file(path)));
}

}  // namespace lego
