#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lego/learner.hpp"
#include "lego/oracles.hpp"
#include "lego/samplers.hpp"
#include "lego/worlds.hpp"

namespace lego {

// Runs fn(i) for i in [0, n); uses LEGO_THREADS (or hardware concurrency)
// workers when count > 1. Tasks must not touch shared mutable state.
int thread_count_from_env();
void run_parallel(int n, const std::function<void(int)>& fn, int threads = 0);

struct CorpusConfig {
  int n_train_worlds = 40;
  int problems_per_train_world = 5;
  int n_test_worlds = 50;
  int problems_per_test_world = 2;
  GapClass gap = GapClass::Small;
  int n_walls = 2;
  int dense_size = 2000;
  int sparse_size = 200;
  double gamma = 1.0;
  int grid_res = 10;
  std::uint64_t master_seed = 1;
  Kinematics kinematics = {};
};

struct ProblemRef {
  std::string id;
  std::string split;  // "train" | "test"
  std::string world_file;
  std::uint64_t world_seed = 0;
  Config start;
  Config goal;
};

struct Corpus {
  CorpusConfig config;
  std::vector<ProblemRef> problems;
  std::string root;
};

// Writes worlds/<split>/<seed>.json plus manifest.json under dir. Every
// problem is checked feasible on the dense Halton graph of the clean world;
// worlds that cannot host the requested problem count are re-rolled.
Corpus generate_corpus(const CorpusConfig& cfg, const std::string& dir);
Corpus load_corpus(const std::string& dir);

Graph dense_graph_for(const CorpusConfig& cfg);
Graph sparse_graph_for(const CorpusConfig& cfg);

struct ExtractionRecord {
  std::string problem_id;
  Provenance provenance;
  FeatureVector features;
  std::vector<Config> nodes;
};

struct ExtractionStats {
  int n_done = 0;
  int n_skipped = 0;  // infeasible or oracle failure; logged to stderr
};

// Runs the oracle over every train problem and appends one JSON line per
// problem to out_path. Returns the records in manifest order.
std::vector<ExtractionRecord> extract_corpus(const Corpus& corpus, Provenance prov,
                                             const OracleConfig& ocfg, const std::string& out_path,
                                             ExtractionStats* stats = nullptr, int threads = 0);

std::vector<ExtractionRecord> load_extraction(const std::string& path);

// (node set, features) pairs ready for train_cvae; empty node sets dropped.
std::vector<std::pair<NodeSet, FeatureVector>> dataset_from_records(
    const std::vector<ExtractionRecord>& recs);

struct SamplerSpec {
  SamplerKind kind = SamplerKind::Halton;
  const CvaeModel* model = nullptr;  // required for learned kinds
};

struct EvalOptions {
  int n_samples = 200;
  double p = 0.7;
  double timeout_ms = 5000.0;
  double sigma = 0.05;
  std::uint64_t eval_seed = 7;
  int corrupt_squares = 0;  // > 0 evaluates on a corrupted copy of each world
  double corrupt_size = 0.05;
  std::string split = "test";
};

struct EvalRecord {
  std::string sampler;
  std::string problem_id;
  int n_samples_drawn = 0;
  double sampling_time_ms = 0.0;
  bool timed_out = false;
  bool padded = false;
  bool success = false;
  double normalized_cost = 0.0;  // valid only when success
};

// Roadmap solution cost divided by the best cost on the dense graph augmented
// with the roadmap's vertices and edges (so the ratio is always >= 1 for a
// successful roadmap). Returns 0 when the roadmap has no solution.
double normalized_cost_of(const Graph& dense, const RoadmapResult& rm, const PlanningProblem& p,
                          Path* solution = nullptr);

// One record per (sampler, problem). Problems whose dense graph is infeasible
// on the evaluation world (possible under corruption) are skipped for every
// sampler. The Halton sampler uses p = 1: its roadmap is just the first
// n_samples Halton points. normalized_cost divides by the shortest path on the
// dense graph augmented with the roadmap's own vertices and edges, so a
// roadmap solution can never beat its oracle.
std::vector<EvalRecord> evaluate_corpus(const Corpus& corpus,
                                        const std::vector<SamplerSpec>& samplers,
                                        const EvalOptions& opt, int threads = 0,
                                        int* n_skipped = nullptr);

struct AggregateRow {
  std::string sampler;
  int n_problems = 0;
  int n_success = 0;
  double success_rate = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
  double mean_sampling_ms = 0.0;
  double median_normalized_cost = 0.0;  // over successes; 0 when none
};

// 95% Wilson score interval for n successes out of total.
std::pair<double, double> wilson_interval(int successes, int total);
double median_of(std::vector<double> v);

std::vector<AggregateRow> aggregate_records(const std::vector<EvalRecord>& records);

void write_records_csv(const std::vector<EvalRecord>& records, const std::string& path);
void write_aggregate_csv(const std::vector<AggregateRow>& rows, const std::string& path);

struct PlotPoint {
  std::string panel;  // "success" | "cost"
  std::string sampler;
  int n_samples = 0;
  double value = 0.0;  // success rate, or median normalized cost
  double lo = 0.0;     // Wilson bound, or lower quartile
  double hi = 0.0;
};

// Sweeps roadmap budgets and emits one row per (panel, sampler, budget).
std::vector<PlotPoint> plot_sweep(const Corpus& corpus, const std::vector<SamplerSpec>& samplers,
                                  const EvalOptions& base, const std::vector<int>& budgets,
                                  int threads = 0);
void write_plot_csv(const std::vector<PlotPoint>& points, const std::string& path);

}  // namespace lego
