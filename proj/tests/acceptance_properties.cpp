// Acceptance gate, part 1: algorithmic guarantees checked against brute-force
// oracles. Prints one PASS/FAIL line per check; exit status is the number of
// failed checks.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lego/graph.hpp"
#include "lego/learner.hpp"
#include "lego/oracles.hpp"
#include "lego/worlds.hpp"
#include "support/brute.hpp"

namespace {

using namespace lego;
using Clock = std::chrono::steady_clock;

int g_failures = 0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(bool ok, const char* label, const std::string& detail) {
  std::printf("[%s] %-42s %s\n", ok ? "PASS" : "FAIL", label, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

template <typename F>
void guarded(const char* label, F&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    report(false, label, std::string("exception: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Bottleneck micro-instances: a small sparse r-disc graph plus a random-walk
// dense path in an empty world. Steps stay under the sparse radius so every
// consecutive walk pair connects when composed, which keeps the cost bound
// satisfiable by construction.

struct MicroInstance {
  Graph sparse;
  ConfigPath dense;
  PlanningProblem prob;
};

MicroInstance make_micro(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  MicroInstance mi;

  int n_sparse = std::uniform_int_distribution<int>(2, 10)(rng);
  double radius = std::uniform_real_distribution<double>(0.3, 0.6)(rng);
  std::vector<Config> pts(n_sparse);
  for (auto& q : pts) q = {unit(rng), unit(rng)};
  mi.sparse = build_rdisc_graph(pts, radius);

  int n_steps = std::uniform_int_distribution<int>(2, 11)(rng);
  std::uniform_real_distribution<double> step(0.3 * radius, 0.95 * radius);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  Config cur = {unit(rng), unit(rng)};
  mi.dense.configs.push_back(cur);
  for (int s = 0; s < n_steps; ++s) {
    double a = angle(rng);
    double len = step(rng);
    Config nxt = {std::clamp(cur[0] + len * std::cos(a), 0.0, 1.0),
                  std::clamp(cur[1] + len * std::sin(a), 0.0, 1.0)};
    mi.dense.configs.push_back(nxt);
    cur = nxt;
  }
  mi.dense.cost = 0.0;
  for (std::size_t i = 0; i + 1 < mi.dense.configs.size(); ++i)
    mi.dense.cost += distance(mi.dense.configs[i], mi.dense.configs[i + 1]);

  mi.prob.start = mi.dense.configs.front();
  mi.prob.goal = mi.dense.configs.back();
  mi.prob.world.seed = seed;
  return mi;
}

double added_weight(const Graph& g, const std::vector<int>& seq) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const HalfEdge* e = g.find_edge(seq[i], seq[i + 1]);
    if (e != nullptr && e->tag == EdgeTag::Added) sum += e->weight;
  }
  return sum;
}

// Cheapest added-edge total over every interior-vertex subset whose
// recomposed graph still admits a path within the cost bound.
double brute_added_optimum(const MicroInstance& mi, double bound) {
  int interior = static_cast<int>(mi.dense.configs.size()) - 2;
  double best = kCostMax;
  for (std::uint32_t mask = 0; mask < (1u << interior); ++mask) {
    std::vector<Config> pts = {mi.prob.start};
    for (int b = 0; b < interior; ++b)
      if (mask >> b & 1u) pts.push_back(mi.dense.configs[b + 1]);
    pts.push_back(mi.prob.goal);
    Graph comp = compose_vertices(mi.sparse, pts);
    Path sp = shortest_path(comp, mi.prob);
    if (sp.cost > bound + 1e-12) continue;
    best = std::min(best, added_weight(comp, sp.vertex_indices));
  }
  return best;
}

void run_bottleneck_checks() {
  auto t0 = Clock::now();
  OracleConfig cfg;
  const int n_instances = 200;
  int weight_ok = 0;
  int recomposed_ok = 0;
  for (int i = 0; i < n_instances; ++i) {
    MicroInstance mi = make_micro(0xACC10000ull + static_cast<std::uint64_t>(i));
    BottleneckResult det = bottleneck_nodes_detail(mi.prob, mi.dense, mi.sparse, cfg);

    double chosen = added_weight(det.composed, det.final_path);
    double optimum = brute_added_optimum(mi, det.bound);
    if (chosen <= optimum + det.bound / det.eta_final + 1e-9) ++weight_ok;

    Graph recomposed = compose_vertices(mi.sparse, det.nodes.nodes);
    Path sp = shortest_path(recomposed, mi.prob);
    if (sp.cost <= det.bound + 1e-9) ++recomposed_ok;
  }
  double dt = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d/%d micro-instances, %.1fs", weight_ok, n_instances, dt);
  report(weight_ok == n_instances && dt < 60.0, "bottleneck added-edge weight bound", buf);
  std::snprintf(buf, sizeof buf, "%d/%d micro-instances", recomposed_ok, n_instances);
  report(recomposed_ok == n_instances, "node-set recomposition cost bound", buf);
}

// ---------------------------------------------------------------------------
// Cover micro-instances: every path is seeded with at least one candidate
// edge, so the instance is always coverable.

struct CoverInstance {
  std::vector<std::vector<int>> paths;
  std::vector<EdgePair> candidates;
};

CoverInstance make_cover(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CoverInstance ci;
  int n_vertices = std::uniform_int_distribution<int>(4, 12)(rng);
  int n_candidates = std::uniform_int_distribution<int>(1, 10)(rng);
  std::uniform_int_distribution<int> vert(0, n_vertices - 1);

  std::set<EdgePair> edges;
  for (int tries = 0; tries < 400 && static_cast<int>(edges.size()) < n_candidates; ++tries) {
    int a = vert(rng);
    int b = vert(rng);
    if (a != b) edges.insert({std::min(a, b), std::max(a, b)});
  }
  ci.candidates.assign(edges.begin(), edges.end());

  int n_paths = std::uniform_int_distribution<int>(1, 12)(rng);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(ci.candidates.size()) - 1);
  std::uniform_int_distribution<int> extra(0, 2);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int p = 0; p < n_paths; ++p) {
    EdgePair e = ci.candidates[pick(rng)];
    std::vector<int> path = {e.first, e.second};
    if (coin(rng)) std::swap(path[0], path[1]);
    for (int k = extra(rng); k > 0; --k) {
      int v = vert(rng);
      if (v != path.front()) path.insert(path.begin(), v);
    }
    for (int k = extra(rng); k > 0; --k) {
      int v = vert(rng);
      if (v != path.back()) path.push_back(v);
    }
    ci.paths.push_back(std::move(path));
  }
  return ci;
}

bool edge_on_path(const std::vector<int>& path, const EdgePair& e) {
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    int a = path[i];
    int b = path[i + 1];
    if ((a == e.first && b == e.second) || (a == e.second && b == e.first)) return true;
  }
  return false;
}

bool covers_all(const std::vector<std::vector<int>>& paths, const std::vector<EdgePair>& cover) {
  for (const auto& p : paths) {
    bool hit = false;
    for (const auto& e : cover)
      if (edge_on_path(p, e)) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

void run_cover_checks() {
  auto t0 = Clock::now();
  const int n_instances = 200;
  int ok = 0;
  for (int i = 0; i < n_instances; ++i) {
    CoverInstance ci = make_cover(0xACC30000ull + static_cast<std::uint64_t>(i));
    std::vector<EdgePair> greedy = greedy_set_cover(ci.paths, ci.candidates);
    auto optimum = brute::min_cover(ci.paths, ci.candidates);
    double factor = 1.0 + std::log(static_cast<double>(ci.paths.size()));
    bool good = optimum.has_value() && covers_all(ci.paths, greedy) &&
                greedy.size() >= optimum->size() &&
                static_cast<double>(greedy.size()) <=
                    factor * static_cast<double>(optimum->size()) + 1e-9;
    if (good) ++ok;
  }
  double dt = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d/%d instances, %.1fs", ok, n_instances, dt);
  report(ok == n_instances && dt < 60.0, "greedy cover approximation factor", buf);
}

// ---------------------------------------------------------------------------
// Search equivalence on random graphs, half of them with box obstacles.

void run_search_checks() {
  auto t0 = Clock::now();
  const int n_instances = 500;
  int ok = 0;
  int feasible = 0;
  for (int i = 0; i < n_instances; ++i) {
    std::mt19937_64 rng(0xACC40000ull + static_cast<std::uint64_t>(i));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int nv = std::uniform_int_distribution<int>(4, 10)(rng);
    std::vector<Config> pts(nv);
    for (auto& q : pts) q = {unit(rng), unit(rng)};

    World w;
    w.seed = static_cast<std::uint64_t>(i);
    if (i % 2 == 1) {
      int n_obs = std::uniform_int_distribution<int>(1, 2)(rng);
      std::uniform_real_distribution<double> center(0.2, 0.8);
      std::uniform_real_distribution<double> half(0.03, 0.12);
      for (int o = 0; o < n_obs; ++o) {
        double cx = center(rng), cy = center(rng);
        double hw = half(rng), hh = half(rng);
        w.obstacles.push_back({cx - hw, cy - hh, cx + hw, cy + hh});
      }
    }

    // Cap the edge count so exhaustive path enumeration stays cheap.
    std::uniform_real_distribution<double> rad(0.3, 0.8);
    double radius = rad(rng);
    Graph g = build_rdisc_graph(pts, radius);
    for (int tries = 0; g.edge_count() > 18 && tries < 60; ++tries) {
      radius = tries < 40 ? rad(rng) : radius * 0.8;
      g = build_rdisc_graph(pts, radius);
    }

    PlanningProblem p;
    p.world = w;
    do p.start = {unit(rng), unit(rng)};
    while (!is_config_free(w, p.start));
    do p.goal = {unit(rng), unit(rng)};
    while (!is_config_free(w, p.goal));

    std::vector<Path> all = brute::enumerate_paths(g, p);
    Path sp = shortest_path(g, p);
    std::vector<Path> ks = k_shortest_paths(g, p, 6);

    bool good;
    if (all.empty()) {
      good = !sp.feasible() && ks.empty();
    } else {
      ++feasible;
      good = sp.vertex_indices == all.front().vertex_indices && sp.cost == all.front().cost;
      std::size_t want = std::min<std::size_t>(6, all.size());
      good = good && ks.size() == want;
      for (std::size_t j = 0; good && j < want; ++j)
        good = ks[j].vertex_indices == all[j].vertex_indices && ks[j].cost == all[j].cost;
    }
    if (good) ++ok;
  }
  double dt = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d/%d graphs (%d feasible), %.1fs", ok, n_instances, feasible,
                dt);
  report(ok == n_instances, "search matches exhaustive enumeration", buf);
}

// ---------------------------------------------------------------------------
// Gradient check on random toy models plus KL nonnegativity.

void run_learner_checks() {
  auto t0 = Clock::now();
  const int n_models = 50;
  const double lambdas[] = {0.0, 2e-4, 5e-2, 0.5};
  int grad_ok = 0;
  for (int j = 0; j < n_models; ++j) {
    std::mt19937_64 rng(0xACC50000ull + static_cast<std::uint64_t>(j));
    std::uniform_int_distribution<int> dim(1, 3);
    int d = dim(rng), m = dim(rng), q = dim(rng);
    int h = std::uniform_int_distribution<int>(3, 6)(rng);
    double lambda = lambdas[std::uniform_int_distribution<int>(0, 3)(rng)];
    CvaeModel model = make_cvae(d, m, q, h, lambda, 0xACC5ull + static_cast<std::uint64_t>(j));
    std::uniform_real_distribution<double> pw(-0.6, 0.6);
    for (double& v : model.params) v = pw(rng);

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> x(d), y(m);
    for (double& v : x) v = unit(rng);
    for (double& v : y) v = unit(rng);
    int rows = std::uniform_int_distribution<int>(1, 3)(rng);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<double>> noise(rows, std::vector<double>(q));
    for (auto& row : noise)
      for (double& v : row) v = gauss(rng);

    std::vector<double> analytic = elbo_grad(model, x, y, noise).second;
    std::vector<double> fd = brute::fd_gradient(model, x, y, noise, 1e-5);
    bool good = analytic.size() == fd.size();
    for (std::size_t t = 0; good && t < analytic.size(); ++t) {
      double diff = std::fabs(analytic[t] - fd[t]);
      double scale = std::max(std::fabs(analytic[t]), std::fabs(fd[t]));
      good = diff <= 1e-7 + 1e-4 * scale;
    }
    if (good) ++grad_ok;
  }

  std::mt19937_64 rng(0xACC51111ull);
  const int n_kl = 100000;
  int kl_ok = 0;
  std::uniform_real_distribution<double> um(-5.0, 5.0);
  std::uniform_real_distribution<double> ul(-6.0, 6.0);
  for (int i = 0; i < n_kl; ++i) {
    int q = std::uniform_int_distribution<int>(1, 4)(rng);
    std::vector<double> mu(q), lv(q);
    for (double& v : mu) v = um(rng);
    for (double& v : lv) v = ul(rng);
    if (kl_divergence(mu, lv) >= 0.0) ++kl_ok;
  }

  double dt = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "models %d/%d, kl draws %d/%d, %.1fs", grad_ok, n_models, kl_ok,
                n_kl, dt);
  report(grad_ok == n_models && kl_ok == n_kl, "cvae gradient and kl checks", buf);
}

}  // namespace

int main() {
  guarded("bottleneck checks", run_bottleneck_checks);
  guarded("greedy cover checks", run_cover_checks);
  guarded("search checks", run_search_checks);
  guarded("cvae checks", run_learner_checks);
  if (g_failures == 0)
    std::printf("all checks passed\n");
  else
    std::printf("%d check(s) failed\n", g_failures);
  return g_failures;
}
