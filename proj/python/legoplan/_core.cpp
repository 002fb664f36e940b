#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lego/bench.hpp"
#include "lego/json_io.hpp"
#include "lego/learner.hpp"
#include "lego/oracles.hpp"
#include "lego/samplers.hpp"
#include "lego/worlds.hpp"

namespace py = pybind11;
using namespace lego;

PYBIND11_MODULE(_core, m) {
  m.doc() = "roadmap sampling core: worlds, graphs, extraction oracles, CVAE samplers";

  py::class_<World>(m, "World")
      .def_readonly("dim", &World::dim)
      .def_readonly("seed", &World::seed)
      .def("n_obstacles", [](const World& w) { return w.obstacles.size(); })
      .def("to_json", [](const World& w) { return world_to_json(w).dump(2); })
      .def_static("from_json",
                  [](const std::string& s) { return world_from_json(Json::parse(s)); });

  m.def(
      "generate_world",
      [](std::uint64_t seed, const std::string& gap, int n_walls, int snake_links,
         double link_length) {
        Kinematics kin;
        if (snake_links > 0) kin = {KinematicsType::NLinkSnake, snake_links, link_length};
        return generate_world(seed, gap_class_from_name(gap), n_walls, kin);
      },
      py::arg("seed"), py::arg("gap") = "medium", py::arg("n_walls") = 2,
      py::arg("snake_links") = 0, py::arg("link_length") = 0.08);
  m.def("corrupt_world", &corrupt_world, py::arg("world"), py::arg("seed"),
        py::arg("n_squares"), py::arg("square_size"));
  m.def("is_config_free", &is_config_free);
  m.def("is_edge_free", &is_edge_free, py::arg("world"), py::arg("a"), py::arg("b"),
        py::arg("step") = kEdgeCheckStep);

  py::class_<PlanningProblem>(m, "PlanningProblem")
      .def(py::init([](Config start, Config goal, const World& w) {
             return PlanningProblem{std::move(start), std::move(goal), w};
           }),
           py::arg("start"), py::arg("goal"), py::arg("world"))
      .def_readonly("start", &PlanningProblem::start)
      .def_readonly("goal", &PlanningProblem::goal);
  m.def("extract_features", &extract_features, py::arg("problem"), py::arg("grid_res") = 10);

  py::class_<Graph>(m, "Graph")
      .def_property_readonly("n_vertices", &Graph::size)
      .def_property_readonly("n_edges", &Graph::edge_count)
      .def_readonly("connect_radius", &Graph::connect_radius)
      .def_readonly("vertices", &Graph::vertices)
      .def("to_json", [](const Graph& g) { return graph_to_json(g).dump(); })
      .def_static("from_json",
                  [](const std::string& s) { return graph_from_json(Json::parse(s)); });

  m.def("halton_points", &halton_points, py::arg("n"), py::arg("dim"));
  m.def(
      "build_halton_graph",
      [](int n, int dim, double gamma) {
        return build_rdisc_graph(halton_points(n, dim), connect_radius(n, dim, gamma));
      },
      py::arg("n"), py::arg("dim"), py::arg("gamma") = 1.5);

  py::class_<Path>(m, "Path")
      .def_readonly("vertex_indices", &Path::vertex_indices)
      .def_readonly("cost", &Path::cost)
      .def("feasible", &Path::feasible);
  m.def(
      "shortest_path",
      [](const Graph& g, const PlanningProblem& p) { return shortest_path(g, p); },
      py::arg("graph"), py::arg("problem"));
  m.def(
      "k_shortest_paths",
      [](const Graph& g, const PlanningProblem& p, int L) {
        return k_shortest_paths(g, p, L);
      },
      py::arg("graph"), py::arg("problem"), py::arg("count"));

  py::class_<OracleConfig>(m, "OracleConfig")
      .def(py::init<>())
      .def_readwrite("epsilon", &OracleConfig::epsilon)
      .def_readwrite("eta_step", &OracleConfig::eta_step)
      .def_readwrite("k", &OracleConfig::k)
      .def_readwrite("ell", &OracleConfig::ell)
      .def_readwrite("L", &OracleConfig::L);
  m.def(
      "sp_nodes",
      [](const PlanningProblem& p, const Graph& dense) { return sp_nodes(p, dense).nodes; },
      py::arg("problem"), py::arg("dense"));
  m.def(
      "diverse_pathset",
      [](const PlanningProblem& p, const Graph& dense, const OracleConfig& cfg) {
        return diverse_pathset(p, dense, cfg);
      },
      py::arg("problem"), py::arg("dense"), py::arg("config") = OracleConfig{});
  m.def(
      "lego_nodes",
      [](const PlanningProblem& p, const Graph& dense, const Graph& sparse,
         const OracleConfig& cfg) { return lego_nodes(p, dense, sparse, cfg).nodes; },
      py::arg("problem"), py::arg("dense"), py::arg("sparse"),
      py::arg("config") = OracleConfig{});

  py::class_<CvaeModel>(m, "CvaeModel")
      .def_readonly("data_dim", &CvaeModel::data_dim)
      .def_readonly("feature_dim", &CvaeModel::feature_dim)
      .def_readonly("latent_dim", &CvaeModel::latent_dim)
      .def("save", &save_model)
      .def_static("load", &load_model);
  m.def(
      "train_cvae",
      [](const std::vector<std::pair<std::vector<Config>, FeatureVector>>& data, int epochs,
         int batch_size, double learning_rate, double lambda, int latent_dim, int hidden,
         std::uint64_t seed) {
        std::vector<std::pair<NodeSet, FeatureVector>> ds;
        for (const auto& [nodes, feat] : data)
          ds.push_back({NodeSet{nodes, Provenance::Lego}, feat});
        TrainConfig cfg;
        cfg.epochs = epochs;
        cfg.batch_size = batch_size;
        cfg.learning_rate = learning_rate;
        cfg.lambda = lambda;
        cfg.latent_dim = latent_dim;
        cfg.hidden = hidden;
        TrainResult res = train_cvae(ds, cfg, seed);
        std::vector<std::tuple<int, double, double, double>> curve;
        for (const auto& row : res.curve)
          curve.emplace_back(row.epoch, row.recon, row.kl, row.total);
        return py::make_tuple(res.model, curve);
      },
      py::arg("dataset"), py::arg("epochs") = 200, py::arg("batch_size") = 64,
      py::arg("learning_rate") = 1e-3, py::arg("lambda") = 2e-4, py::arg("latent_dim") = 0,
      py::arg("hidden") = 512, py::arg("seed") = 1);
  m.def("sample_cvae", &sample_cvae, py::arg("model"), py::arg("features"), py::arg("n"),
        py::arg("seed"));

  m.def(
      "draw_samples",
      [](const std::string& kind, const PlanningProblem& p, int n, double timeout_ms,
         std::uint64_t seed, double sigma, const CvaeModel* model, int grid_res) {
        SamplerParams params;
        params.sigma = sigma;
        params.model = model;
        params.grid_res = grid_res;
        DrawResult r = draw_samples(sampler_from_name(kind), p, n, timeout_ms, seed, params);
        return py::make_tuple(r.samples, r.elapsed_ms, r.timed_out);
      },
      py::arg("kind"), py::arg("problem"), py::arg("n"), py::arg("timeout_ms") = 5000.0,
      py::arg("seed") = 0, py::arg("sigma") = 0.05, py::arg("model") = nullptr,
      py::arg("grid_res") = 10);
  m.def(
      "assemble_roadmap",
      [](const Graph& sparse, const std::vector<Config>& samples, double p, int n_total,
         double gamma) {
        RoadmapResult r = assemble_roadmap(sparse, samples, p, n_total, gamma);
        return py::make_tuple(r.graph, r.n_sparse, r.n_samples, r.padded);
      },
      py::arg("sparse"), py::arg("samples"), py::arg("p"), py::arg("n_total"),
      py::arg("gamma") = 1.5);
}
