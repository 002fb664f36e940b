#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lego/bench.hpp"
#include "lego/json_io.hpp"
#include "lego/learner.hpp"
#include "lego/oracles.hpp"
#include "lego/samplers.hpp"

using namespace lego;

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t c = s.find(',', pos);
    if (c == std::string::npos) c = s.size();
    if (c > pos) out.push_back(s.substr(pos, c - pos));
    pos = c + 1;
  }
  return out;
}

struct EvalArgs {
  std::string corpus;
  std::string samplers = "halton";
  std::string model_sp, model_lego;
  std::string out = "records.csv";
  std::string aggregate_out, plot_out;
  int n_samples = 200;
  double p = 0.7;
  double timeout_ms = 5000;
  double sigma = 0.05;
  std::uint64_t eval_seed = 7;
  std::string split = "test";
  int threads = 0;
  std::string budgets = "50,100,200,350,500";
};

void add_eval_flags(CLI::App* cmd, EvalArgs& a) {
  cmd->add_option("--corpus", a.corpus, "corpus directory (from gen-worlds)")->required();
  cmd->add_option("--samplers", a.samplers, "comma list: halton,gaussian,bridge,sp,lego");
  cmd->add_option("--model-sp", a.model_sp, "model file for the sp sampler");
  cmd->add_option("--model-lego", a.model_lego, "model file for the lego sampler");
  cmd->add_option("--n-samples", a.n_samples, "roadmap vertex budget N");
  cmd->add_option("--p", a.p, "sparse fraction of the budget");
  cmd->add_option("--timeout-ms", a.timeout_ms, "per-problem sampling timeout");
  cmd->add_option("--sigma", a.sigma, "gaussian / bridge perturbation scale");
  cmd->add_option("--seed", a.eval_seed, "evaluation seed");
  cmd->add_option("--split", a.split, "problem split: test, train or all");
  cmd->add_option("--out", a.out, "per-record CSV path");
  cmd->add_option("--aggregate-out", a.aggregate_out, "aggregate CSV path");
  cmd->add_option("--plot-data", a.plot_out, "sweep budgets and write plot CSV here");
  cmd->add_option("--budgets", a.budgets, "comma list of budgets for --plot-data");
  cmd->add_option("--threads", a.threads, "worker threads (default: LEGO_THREADS or cores)");
}

int run_eval(const EvalArgs& a, int corrupt_squares, double corrupt_size) {
  Corpus corpus = load_corpus(a.corpus);
  std::map<std::string, CvaeModel> models;
  if (!a.model_sp.empty()) models["sp"] = load_model(a.model_sp);
  if (!a.model_lego.empty()) models["lego"] = load_model(a.model_lego);

  std::vector<SamplerSpec> specs;
  for (const std::string& name : split_list(a.samplers)) {
    SamplerSpec spec;
    spec.kind = sampler_from_name(name);
    if (sampler_is_learned(spec.kind)) {
      auto it = models.find(name);
      if (it == models.end()) {
        std::fprintf(stderr, "sampler %s needs --model-%s\n", name.c_str(), name.c_str());
        return 1;
      }
      spec.model = &it->second;
    }
    specs.push_back(spec);
  }

  EvalOptions opt;
  opt.n_samples = a.n_samples;
  opt.p = a.p;
  opt.timeout_ms = a.timeout_ms;
  opt.sigma = a.sigma;
  opt.eval_seed = a.eval_seed;
  opt.split = a.split;
  opt.corrupt_squares = corrupt_squares;
  opt.corrupt_size = corrupt_size;

  if (!a.plot_out.empty()) {
    std::vector<int> budgets;
    for (const std::string& b : split_list(a.budgets)) budgets.push_back(std::stoi(b));
    auto points = plot_sweep(corpus, specs, opt, budgets, a.threads);
    write_plot_csv(points, a.plot_out);
    std::printf("wrote %zu plot rows to %s\n", points.size(), a.plot_out.c_str());
    return 0;
  }

  int skipped = 0;
  auto records = evaluate_corpus(corpus, specs, opt, a.threads, &skipped);
  write_records_csv(records, a.out);
  auto rows = aggregate_records(records);
  if (!a.aggregate_out.empty()) write_aggregate_csv(rows, a.aggregate_out);
  std::printf("%-10s %10s %10s %14s %12s\n", "sampler", "problems", "success", "median_cost",
              "mean_ms");
  for (const auto& r : rows)
    std::printf("%-10s %10d %9.1f%% %14.4f %12.3f\n", r.sampler.c_str(), r.n_problems,
                100.0 * r.success_rate, r.median_normalized_cost, r.mean_sampling_ms);
  if (skipped) std::printf("skipped %d infeasible problems\n", skipped);
  std::printf("wrote %zu records to %s\n", records.size(), a.out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"roadmap sampling toolkit: world generation, node extraction, "
               "generative-model training and sampler benchmarks"};
  app.require_subcommand(1);

  // --- gen-worlds ---
  CorpusConfig ccfg;
  std::string gap_name = "small", corpus_out = "corpus";
  std::uint64_t gen_seed = 1;
  int snake_links = 0;
  double snake_link_length = 0.08;
  auto* gen = app.add_subcommand("gen-worlds", "generate a world corpus with a manifest");
  gen->add_option("--seed", gen_seed, "master seed");
  gen->add_option("--gap", gap_name, "gap class: small, medium or large");
  gen->add_option("--out", corpus_out, "output corpus directory")->required();
  gen->add_option("--walls", ccfg.n_walls, "walls per world");
  gen->add_option("--train-worlds", ccfg.n_train_worlds, "number of training worlds");
  gen->add_option("--test-worlds", ccfg.n_test_worlds, "number of test worlds");
  gen->add_option("--train-problems", ccfg.problems_per_train_world, "problems per train world");
  gen->add_option("--test-problems", ccfg.problems_per_test_world, "problems per test world");
  gen->add_option("--dense-size", ccfg.dense_size, "dense graph vertex count");
  gen->add_option("--sparse-size", ccfg.sparse_size, "sparse graph vertex count");
  gen->add_option("--snake-links", snake_links, "use an n-link snake instead of a point robot");
  gen->add_option("--snake-link-length", snake_link_length, "link length for the snake");

  // --- extract ---
  std::string ex_corpus, ex_oracle = "lego", ex_out = "nodes.jsonl";
  OracleConfig ocfg;
  int ex_threads = 0;
  auto* ex = app.add_subcommand("extract", "run a node-extraction oracle over the train split");
  ex->add_option("--corpus", ex_corpus, "corpus directory")->required();
  ex->add_option("--oracle", ex_oracle, "sp, bottleneck, diverse or lego");
  ex->add_option("--eps", ocfg.epsilon, "suboptimality slack");
  ex->add_option("--k", ocfg.k, "diverse path count");
  ex->add_option("--ell", ocfg.ell, "adversary edge budget per round");
  ex->add_option("--L", ocfg.L, "shortest-path enumeration window");
  ex->add_option("--out", ex_out, "output JSONL path");
  ex->add_option("--threads", ex_threads, "worker threads");

  // --- train ---
  std::string tr_data, tr_out = "model.bin", tr_loss;
  TrainConfig tcfg;
  std::uint64_t tr_seed = 1;
  auto* tr = app.add_subcommand("train", "train the conditional VAE on extracted nodes");
  tr->add_option("--data", tr_data, "extraction JSONL path")->required();
  tr->add_option("--latent-dim", tcfg.latent_dim, "latent dimension (0 = by config dim)");
  tr->add_option("--lambda", tcfg.lambda, "KL weight");
  tr->add_option("--epochs", tcfg.epochs, "training epochs");
  tr->add_option("--batch-size", tcfg.batch_size, "minibatch size");
  tr->add_option("--lr", tcfg.learning_rate, "Adam learning rate");
  tr->add_option("--hidden", tcfg.hidden, "hidden layer width");
  tr->add_option("--seed", tr_seed, "training seed");
  tr->add_option("--out", tr_out, "model output path");
  tr->add_option("--loss-out", tr_loss, "loss curve CSV (default: <out>.loss.csv)");

  // --- eval / mismatch-eval ---
  EvalArgs ea;
  auto* ev = app.add_subcommand("eval", "benchmark samplers on the test split");
  add_eval_flags(ev, ea);

  EvalArgs ma;
  int mm_squares = 3;
  double mm_size = 0.05;
  auto* mm = app.add_subcommand("mismatch-eval",
                                "benchmark on corrupted copies of the test worlds");
  add_eval_flags(mm, ma);
  mm->add_option("--squares", mm_squares, "corruption squares per world");
  mm->add_option("--size", mm_size, "corruption square side length");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      ccfg.master_seed = gen_seed;
      ccfg.gap = gap_class_from_name(gap_name);
      if (snake_links > 0)
        ccfg.kinematics = {KinematicsType::NLinkSnake, snake_links, snake_link_length};
      Corpus corpus = generate_corpus(ccfg, corpus_out);
      std::printf("wrote %zu problems to %s/manifest.json\n", corpus.problems.size(),
                  corpus_out.c_str());
    } else if (ex->parsed()) {
      Corpus corpus = load_corpus(ex_corpus);
      ExtractionStats stats;
      extract_corpus(corpus, provenance_from_name(ex_oracle), ocfg, ex_out, &stats, ex_threads);
      std::printf("extracted %d node sets (%d skipped) to %s\n", stats.n_done, stats.n_skipped,
                  ex_out.c_str());
    } else if (tr->parsed()) {
      auto records = load_extraction(tr_data);
      auto dataset = dataset_from_records(records);
      TrainResult res = train_cvae(dataset, tcfg, tr_seed);
      save_model(res.model, tr_out);
      write_loss_csv(res.curve, tr_loss.empty() ? tr_out + ".loss.csv" : tr_loss);
      std::printf("trained on %zu node sets; final loss %.6f; model at %s\n", dataset.size(),
                  res.curve.empty() ? 0.0 : res.curve.back().total, tr_out.c_str());
    } else if (ev->parsed()) {
      return run_eval(ea, 0, 0.0);
    } else if (mm->parsed()) {
      return run_eval(ma, mm_squares, mm_size);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
