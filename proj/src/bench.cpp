#include "lego/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "lego/json_io.hpp"
#include "lego/rng.hpp"

namespace fs = std::filesystem;

namespace lego {

int thread_count_from_env() {
  if (const char* s = std::getenv("LEGO_THREADS")) {
    int v = std::atoi(s);
    if (v > 0) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

void run_parallel(int n, const std::function<void(int)>& fn, int threads) {
  if (threads <= 0) threads = thread_count_from_env();
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

namespace {

constexpr double kStartXLo = 0.02, kStartXHi = 0.15;
constexpr double kGoalXLo = 0.85, kGoalXHi = 0.98;
constexpr double kBandYLo = 0.05, kBandYHi = 0.95;

Json corpus_config_to_json(const CorpusConfig& c) {
  Json j;
  j["n_train_worlds"] = c.n_train_worlds;
  j["problems_per_train_world"] = c.problems_per_train_world;
  j["n_test_worlds"] = c.n_test_worlds;
  j["problems_per_test_world"] = c.problems_per_test_world;
  j["gap"] = gap_class_name(c.gap);
  j["n_walls"] = c.n_walls;
  j["dense_size"] = c.dense_size;
  j["sparse_size"] = c.sparse_size;
  j["gamma"] = c.gamma;
  j["grid_res"] = c.grid_res;
  j["master_seed"] = c.master_seed;
  j["kinematics_type"] =
      c.kinematics.type == KinematicsType::Point2D ? "point2d" : "nlink_snake";
  j["n_links"] = c.kinematics.n_links;
  j["link_length"] = c.kinematics.link_length;
  return j;
}

CorpusConfig corpus_config_from_json(const Json& j) {
  CorpusConfig c;
  c.n_train_worlds = j.at("n_train_worlds").get<int>();
  c.problems_per_train_world = j.at("problems_per_train_world").get<int>();
  c.n_test_worlds = j.at("n_test_worlds").get<int>();
  c.problems_per_test_world = j.at("problems_per_test_world").get<int>();
  c.gap = gap_class_from_name(j.at("gap").get<std::string>());
  c.n_walls = j.at("n_walls").get<int>();
  c.dense_size = j.at("dense_size").get<int>();
  c.sparse_size = j.at("sparse_size").get<int>();
  c.gamma = j.at("gamma").get<double>();
  c.grid_res = j.at("grid_res").get<int>();
  c.master_seed = j.at("master_seed").get<std::uint64_t>();
  c.kinematics.type = j.at("kinematics_type").get<std::string>() == "point2d"
                          ? KinematicsType::Point2D
                          : KinematicsType::NLinkSnake;
  c.kinematics.n_links = j.at("n_links").get<int>();
  c.kinematics.link_length = j.at("link_length").get<double>();
  return c;
}

Config sample_band_config(Rng& rng, int dim, double xlo, double xhi) {
  Config q(dim);
  q[0] = rng.uniform(xlo, xhi);
  q[1] = rng.uniform(kBandYLo, kBandYHi);
  for (int i = 2; i < dim; ++i) q[i] = rng.uniform();
  return q;
}

World load_problem_world(const Corpus& c, const ProblemRef& ref) {
  return load_world(c.root + "/" + ref.world_file);
}

// Copy of g without the edges that collide in w. Searches on the pruned graph
// return the same paths as lazy discovery on the original, but each query
// costs one Dijkstra instead of one per blocked edge; worth it whenever a
// world hosts many queries.
Graph prune_blocked_edges(const Graph& g, const World& w) {
  Graph out;
  out.vertices = g.vertices;
  out.connect_radius = g.connect_radius;
  out.adj.assign(g.adj.size(), {});
  for (int u = 0; u < g.size(); ++u)
    for (const HalfEdge& e : g.adj[u]) {
      if (e.to < u) continue;
      if (is_edge_free(w, g.vertices[u], g.vertices[e.to]))
        out.add_edge(u, e.to, e.weight, e.tag);
    }
  return out;
}

// Consecutive manifest runs sharing a world file, so each world loads once.
std::vector<std::pair<int, int>> world_groups(const std::vector<int>& idx,
                                              const std::vector<ProblemRef>& probs) {
  std::vector<std::pair<int, int>> groups;
  for (int i = 0; i < static_cast<int>(idx.size());) {
    int j = i;
    while (j < static_cast<int>(idx.size()) &&
           probs[idx[j]].world_seed == probs[idx[i]].world_seed)
      ++j;
    groups.emplace_back(i, j);
    i = j;
  }
  return groups;
}

}  // namespace

Graph dense_graph_for(const CorpusConfig& cfg) {
  int dim = cfg.kinematics.config_dim();
  return build_rdisc_graph(halton_points(cfg.dense_size, dim),
                           connect_radius(cfg.dense_size, dim, cfg.gamma));
}

Graph sparse_graph_for(const CorpusConfig& cfg) {
  int dim = cfg.kinematics.config_dim();
  return build_rdisc_graph(halton_points(cfg.sparse_size, dim),
                           connect_radius(cfg.sparse_size, dim, cfg.gamma));
}

Corpus generate_corpus(const CorpusConfig& cfg, const std::string& dir) {
  fs::create_directories(dir + "/worlds/train");
  fs::create_directories(dir + "/worlds/test");
  Corpus corpus;
  corpus.config = cfg;
  corpus.root = dir;
  Graph dense = dense_graph_for(cfg);

  auto make_split = [&](const std::string& split, int n_worlds, int per_world,
                        std::uint64_t tag) {
    for (int w = 0; w < n_worlds; ++w) {
      bool placed = false;
      for (int trial = 0; trial < 64 && !placed; ++trial) {
        std::uint64_t seed =
            Rng::derive(cfg.master_seed, tag, (static_cast<std::uint64_t>(w) << 8) | trial);
        World world;
        try {
          world = generate_world(seed, cfg.gap, cfg.n_walls, cfg.kinematics);
        } catch (const std::runtime_error&) {
          continue;
        }
        Graph pruned = prune_blocked_edges(dense, world);
        Rng prng(Rng::derive(seed, 0x9b0b));
        std::vector<ProblemRef> probs;
        bool ok = true;
        for (int j = 0; j < per_world && ok; ++j) {
          ok = false;
          for (int att = 0; att < 40 && !ok; ++att) {
            Config s = sample_band_config(prng, world.dim, kStartXLo, kStartXHi);
            Config g = sample_band_config(prng, world.dim, kGoalXLo, kGoalXHi);
            if (!is_config_free(world, s) || !is_config_free(world, g)) continue;
            PlanningProblem prob{s, g, world};
            if (!shortest_path(pruned, prob).feasible()) continue;
            char id[64];
            std::snprintf(id, sizeof id, "%s-%03d-%d", split.c_str(), w, j);
            probs.push_back({id, split,
                             "worlds/" + split + "/" + std::to_string(seed) + ".json", seed, s,
                             g});
            ok = true;
          }
        }
        if (!ok) continue;
        save_world(world, dir + "/" + probs.front().world_file);
        corpus.problems.insert(corpus.problems.end(), probs.begin(), probs.end());
        placed = true;
      }
      if (!placed)
        throw std::runtime_error("generate_corpus: no feasible world for " + split + " index " +
                                 std::to_string(w));
    }
  };
  make_split("train", cfg.n_train_worlds, cfg.problems_per_train_world, 0x7a11);
  make_split("test", cfg.n_test_worlds, cfg.problems_per_test_world, 0x7e57);

  Json manifest;
  manifest["config"] = corpus_config_to_json(cfg);
  Json plist = Json::array();
  for (const auto& p : corpus.problems) {
    Json jp;
    jp["id"] = p.id;
    jp["split"] = p.split;
    jp["world_file"] = p.world_file;
    jp["world_seed"] = p.world_seed;
    jp["start"] = p.start;
    jp["goal"] = p.goal;
    plist.push_back(std::move(jp));
  }
  manifest["problems"] = std::move(plist);
  write_text_file(dir + "/manifest.json", manifest.dump(2) + "\n");
  return corpus;
}

Corpus load_corpus(const std::string& dir) {
  Json manifest = Json::parse(read_text_file(dir + "/manifest.json"));
  Corpus corpus;
  corpus.root = dir;
  corpus.config = corpus_config_from_json(manifest.at("config"));
  for (const auto& jp : manifest.at("problems")) {
    ProblemRef p;
    p.id = jp.at("id").get<std::string>();
    p.split = jp.at("split").get<std::string>();
    p.world_file = jp.at("world_file").get<std::string>();
    p.world_seed = jp.at("world_seed").get<std::uint64_t>();
    p.start = jp.at("start").get<Config>();
    p.goal = jp.at("goal").get<Config>();
    corpus.problems.push_back(std::move(p));
  }
  return corpus;
}

std::vector<ExtractionRecord> extract_corpus(const Corpus& corpus, Provenance prov,
                                             const OracleConfig& ocfg, const std::string& out_path,
                                             ExtractionStats* stats, int threads) {
  std::vector<int> train_idx;
  for (int i = 0; i < static_cast<int>(corpus.problems.size()); ++i)
    if (corpus.problems[i].split == "train") train_idx.push_back(i);

  const Graph dense = dense_graph_for(corpus.config);
  const Graph sparse = sparse_graph_for(corpus.config);
  auto groups = world_groups(train_idx, corpus.problems);

  std::vector<ExtractionRecord> records(train_idx.size());
  std::vector<char> done(train_idx.size(), 0);
  std::mutex log_mu;

  run_parallel(
      static_cast<int>(groups.size()),
      [&](int gi) {
        auto [lo, hi] = groups[gi];
        World world = load_problem_world(corpus, corpus.problems[train_idx[lo]]);
        Graph dense_w = prune_blocked_edges(dense, world);
        Graph sparse_w = prune_blocked_edges(sparse, world);
        for (int t = lo; t < hi; ++t) {
          const ProblemRef& ref = corpus.problems[train_idx[t]];
          PlanningProblem prob{ref.start, ref.goal, world};
          try {
            ExtractionRecord rec;
            rec.problem_id = ref.id;
            rec.provenance = prov;
            rec.features = extract_features(prob, corpus.config.grid_res);
            switch (prov) {
              case Provenance::ShortestPath:
                rec.nodes = sp_nodes(prob, dense_w).nodes;
                break;
              case Provenance::Bottleneck: {
                Path dp = shortest_path(dense_w, prob);
                if (!dp.feasible()) throw std::runtime_error("dense graph infeasible");
                ConfigPath cp = to_config_path(dense_w, prob, dp);
                rec.nodes = bottleneck_nodes(prob, cp, sparse_w, ocfg).nodes;
                break;
              }
              case Provenance::Diverse: {
                auto paths = diverse_pathset(prob, dense_w, ocfg);
                if (paths.empty()) throw std::runtime_error("dense graph infeasible");
                for (const Path& path : paths) {
                  auto cfgs = resolve_path_configs(dense_w, prob, path);
                  for (std::size_t i = 1; i + 1 < cfgs.size(); ++i) {
                    if (std::find(rec.nodes.begin(), rec.nodes.end(), cfgs[i]) ==
                        rec.nodes.end())
                      rec.nodes.push_back(cfgs[i]);
                  }
                }
                break;
              }
              case Provenance::Lego:
                rec.nodes = lego_nodes(prob, dense_w, sparse_w, ocfg).nodes;
                break;
            }
            records[t] = std::move(rec);
            done[t] = 1;
          } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lk(log_mu);
            std::fprintf(stderr, "extract: skipping %s: %s\n", ref.id.c_str(), e.what());
          }
        }
      },
      threads);

  std::vector<ExtractionRecord> out;
  std::string text;
  for (std::size_t t = 0; t < records.size(); ++t) {
    if (!done[t]) continue;
    const ExtractionRecord& rec = records[t];
    Json j;
    j["problem_id"] = rec.problem_id;
    j["provenance"] = provenance_name(rec.provenance);
    j["features"] = rec.features;
    j["nodes"] = rec.nodes;
    text += j.dump();
    text += "\n";
    out.push_back(rec);
  }
  if (!out_path.empty()) write_text_file(out_path, text);
  if (stats) {
    stats->n_done = static_cast<int>(out.size());
    stats->n_skipped = static_cast<int>(records.size() - out.size());
  }
  return out;
}

std::vector<ExtractionRecord> load_extraction(const std::string& path) {
  std::string text = read_text_file(path);
  std::vector<ExtractionRecord> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    Json j = Json::parse(line);
    ExtractionRecord rec;
    rec.problem_id = j.at("problem_id").get<std::string>();
    rec.provenance = provenance_from_name(j.at("provenance").get<std::string>());
    rec.features = j.at("features").get<FeatureVector>();
    rec.nodes = j.at("nodes").get<std::vector<Config>>();
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<std::pair<NodeSet, FeatureVector>> dataset_from_records(
    const std::vector<ExtractionRecord>& recs) {
  std::vector<std::pair<NodeSet, FeatureVector>> out;
  for (const auto& r : recs) {
    if (r.nodes.empty()) continue;
    out.push_back({NodeSet{r.nodes, r.provenance}, r.features});
  }
  return out;
}

namespace {

// Dense graph plus every roadmap vertex and edge. The leading n_sparse roadmap
// vertices are the same Halton points as the leading dense vertices, so they
// map by index; sampler vertices are appended.
Graph union_with_roadmap(const Graph& dense, const RoadmapResult& rm) {
  Graph u = dense;
  // Start/goal are composed at connect_radius; without the max the union
  // would miss long start/goal edges the roadmap has.
  u.connect_radius = std::max(dense.connect_radius, rm.graph.connect_radius);
  std::vector<int> map(rm.graph.size());
  for (int i = 0; i < rm.graph.size(); ++i) {
    if (i < rm.n_sparse) {
      map[i] = i;
    } else {
      map[i] = u.size();
      u.vertices.push_back(rm.graph.vertices[i]);
      u.adj.emplace_back();
    }
  }
  for (int i = 0; i < rm.graph.size(); ++i) {
    for (const HalfEdge& he : rm.graph.adj[i]) {
      if (he.to < i) continue;
      int a = map[i], b = map[he.to];
      if (!u.has_edge(a, b)) u.add_edge(a, b, he.weight, EdgeTag::Added);
    }
  }
  return u;
}

}  // namespace

double normalized_cost_of(const Graph& dense, const RoadmapResult& rm, const PlanningProblem& p,
                          Path* solution) {
  Path sol = shortest_path(rm.graph, p);
  if (solution) *solution = sol;
  if (!sol.feasible()) return 0.0;
  Graph uni = union_with_roadmap(dense, rm);
  Path best = shortest_path(uni, p);
  return sol.cost / best.cost;
}

std::vector<EvalRecord> evaluate_corpus(const Corpus& corpus,
                                        const std::vector<SamplerSpec>& samplers,
                                        const EvalOptions& opt, int threads, int* n_skipped) {
  if (opt.split != "train" && opt.split != "test" && opt.split != "all")
    throw std::invalid_argument("evaluate_corpus: unknown split " + opt.split);
  std::vector<int> idx;
  for (int i = 0; i < static_cast<int>(corpus.problems.size()); ++i)
    if (opt.split == "all" || corpus.problems[i].split == opt.split) idx.push_back(i);

  const Graph dense = dense_graph_for(corpus.config);
  const int dim = corpus.config.kinematics.config_dim();
  const int n_total = opt.n_samples;
  if (static_cast<int>(std::ceil(opt.p * n_total)) > corpus.config.dense_size)
    throw std::invalid_argument("evaluate_corpus: sparse prefix exceeds dense graph size");
  // Vertex store for roadmap assembly; assemble_roadmap rebuilds the edges
  // for its own budget, so no edges are needed here.
  Graph backbone;
  backbone.vertices = halton_points(n_total, dim);
  backbone.adj.resize(backbone.vertices.size());

  const int S = static_cast<int>(samplers.size());
  std::vector<EvalRecord> records(idx.size() * S);
  std::vector<char> keep(idx.size() * S, 0);
  std::atomic<int> skipped{0};
  std::mutex log_mu;

  auto groups = world_groups(idx, corpus.problems);
  run_parallel(
      static_cast<int>(groups.size()),
      [&](int gi) {
        auto [lo, hi] = groups[gi];
        World clean = load_problem_world(corpus, corpus.problems[idx[lo]]);
        World eval_world = clean;
        if (opt.corrupt_squares > 0)
          eval_world = corrupt_world(clean, Rng::derive(opt.eval_seed, 0xbadd, clean.seed),
                                     opt.corrupt_squares, opt.corrupt_size);
        Graph dense_w = prune_blocked_edges(dense, eval_world);
        for (int t = lo; t < hi; ++t) {
          const ProblemRef& ref = corpus.problems[idx[t]];
          PlanningProblem p_eval{ref.start, ref.goal, eval_world};
          PlanningProblem p_feat{ref.start, ref.goal, clean};
          bool dense_ok = false;
          try {
            dense_ok = shortest_path(dense_w, p_eval).feasible();
          } catch (const std::invalid_argument&) {
            dense_ok = false;  // start or goal swallowed by corruption
          }
          if (!dense_ok) {
            skipped.fetch_add(1);
            std::lock_guard<std::mutex> lk(log_mu);
            std::fprintf(stderr, "evaluate: skipping %s: dense graph infeasible\n",
                         ref.id.c_str());
            continue;
          }
          for (int si = 0; si < S; ++si) {
            const SamplerSpec& spec = samplers[si];
            SamplerParams params;
            params.sigma = opt.sigma;
            params.model = spec.model;
            params.grid_res = corpus.config.grid_res;
            std::uint64_t seed = Rng::derive(opt.eval_seed, 0xd7a3 + si, t);
            bool halton = spec.kind == SamplerKind::Halton;
            const PlanningProblem& draw_prob =
                sampler_is_learned(spec.kind) ? p_feat : p_eval;
            // Every sampler draws the full budget; assembly takes its share.
            DrawResult dr =
                draw_samples(spec.kind, draw_prob, n_total, opt.timeout_ms, seed, params);
            RoadmapResult rm =
                halton ? assemble_roadmap(backbone, {}, 1.0, n_total, corpus.config.gamma)
                       : assemble_roadmap(backbone, dr.samples, opt.p, n_total,
                                          corpus.config.gamma);
            EvalRecord rec;
            rec.sampler = sampler_name(spec.kind);
            rec.problem_id = ref.id;
            rec.n_samples_drawn = static_cast<int>(dr.samples.size());
            rec.sampling_time_ms = dr.elapsed_ms;
            rec.timed_out = dr.timed_out;
            rec.padded = rm.padded;
            rm.graph = prune_blocked_edges(rm.graph, eval_world);
            Path sol;
            rec.normalized_cost = normalized_cost_of(dense_w, rm, p_eval, &sol);
            rec.success = sol.feasible();
            records[t * S + si] = std::move(rec);
            keep[t * S + si] = 1;
          }
        }
      },
      threads);

  std::vector<EvalRecord> out;
  for (std::size_t i = 0; i < records.size(); ++i)
    if (keep[i]) out.push_back(std::move(records[i]));
  if (n_skipped) *n_skipped = skipped.load();
  return out;
}

std::pair<double, double> wilson_interval(int successes, int total) {
  if (total <= 0) return {0.0, 1.0};
  const double z = 1.959963984540054;
  double n = total, ph = double(successes) / n, z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = ph + z2 / (2.0 * n);
  double spread = z * std::sqrt(ph * (1.0 - ph) / n + z2 / (4.0 * n * n));
  return {(center - spread) / denom, (center + spread) / denom};
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<AggregateRow> aggregate_records(const std::vector<EvalRecord>& records) {
  std::vector<AggregateRow> rows;
  std::vector<std::vector<double>> costs;
  std::vector<double> time_sums;
  auto row_for = [&](const std::string& name) -> int {
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (rows[i].sampler == name) return static_cast<int>(i);
    rows.push_back({});
    rows.back().sampler = name;
    costs.emplace_back();
    time_sums.push_back(0.0);
    return static_cast<int>(rows.size()) - 1;
  };
  for (const auto& r : records) {
    int i = row_for(r.sampler);
    rows[i].n_problems += 1;
    time_sums[i] += r.sampling_time_ms;
    if (r.success) {
      rows[i].n_success += 1;
      costs[i].push_back(r.normalized_cost);
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    AggregateRow& row = rows[i];
    row.success_rate = row.n_problems ? double(row.n_success) / row.n_problems : 0.0;
    auto [lo, hi] = wilson_interval(row.n_success, row.n_problems);
    row.wilson_lo = lo;
    row.wilson_hi = hi;
    row.mean_sampling_ms = row.n_problems ? time_sums[i] / row.n_problems : 0.0;
    row.median_normalized_cost = median_of(costs[i]);
  }
  return rows;
}

void write_records_csv(const std::vector<EvalRecord>& records, const std::string& path) {
  std::string text =
      "sampler,problem_id,n_samples_drawn,sampling_time_ms,timed_out,padded,success,"
      "normalized_cost\n";
  char buf[256];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%s,%s,%d,%.3f,%d,%d,%d,%.17g\n", r.sampler.c_str(),
                  r.problem_id.c_str(), r.n_samples_drawn, r.sampling_time_ms,
                  r.timed_out ? 1 : 0, r.padded ? 1 : 0, r.success ? 1 : 0,
                  r.success ? r.normalized_cost : 0.0);
    text += buf;
  }
  write_text_file(path, text);
}

void write_aggregate_csv(const std::vector<AggregateRow>& rows, const std::string& path) {
  std::string text =
      "sampler,n_problems,n_success,success_rate,wilson_lo,wilson_hi,mean_sampling_ms,"
      "median_normalized_cost\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%d,%d,%.6f,%.6f,%.6f,%.3f,%.17g\n", r.sampler.c_str(),
                  r.n_problems, r.n_success, r.success_rate, r.wilson_lo, r.wilson_hi,
                  r.mean_sampling_ms, r.median_normalized_cost);
    text += buf;
  }
  write_text_file(path, text);
}

std::vector<PlotPoint> plot_sweep(const Corpus& corpus, const std::vector<SamplerSpec>& samplers,
                                  const EvalOptions& base, const std::vector<int>& budgets,
                                  int threads) {
  std::vector<PlotPoint> points;
  for (int n : budgets) {
    EvalOptions opt = base;
    opt.n_samples = n;
    auto records = evaluate_corpus(corpus, samplers, opt, threads);
    auto rows = aggregate_records(records);
    for (const auto& row : rows) {
      points.push_back({"success", row.sampler, n, row.success_rate, row.wilson_lo,
                        row.wilson_hi});
      std::vector<double> costs;
      for (const auto& r : records)
        if (r.sampler == row.sampler && r.success) costs.push_back(r.normalized_cost);
      std::sort(costs.begin(), costs.end());
      PlotPoint cp{"cost", row.sampler, n, row.median_normalized_cost, 0.0, 0.0};
      if (!costs.empty()) {
        // Symmetric quartile band; the upper index rounds up so the band
        // always contains the median.
        std::size_t q = (costs.size() - 1) / 4;
        cp.lo = costs[q];
        cp.hi = costs[costs.size() - 1 - q];
      }
      points.push_back(cp);
    }
  }
  return points;
}

void write_plot_csv(const std::vector<PlotPoint>& points, const std::string& path) {
  std::string text = "panel,sampler,n_samples,value,lo,hi\n";
  char buf[256];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%s,%s,%d,%.6f,%.6f,%.6f\n", p.panel.c_str(),
                  p.sampler.c_str(), p.n_samples, p.value, p.lo, p.hi);
    text += buf;
  }
  write_text_file(path, text);
}

}  // namespace lego
