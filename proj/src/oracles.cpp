#include "lego/oracles.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace lego {

std::string provenance_name(Provenance p) {
  switch (p) {
    case Provenance::ShortestPath: return "sp";
    case Provenance::Bottleneck: return "bottleneck";
    case Provenance::Diverse: return "diverse";
    case Provenance::Lego: return "lego";
  }
  throw std::invalid_argument("unknown provenance");
}

Provenance provenance_from_name(const std::string& name) {
  if (name == "sp") return Provenance::ShortestPath;
  if (name == "bottleneck") return Provenance::Bottleneck;
  if (name == "diverse") return Provenance::Diverse;
  if (name == "lego") return Provenance::Lego;
  throw std::invalid_argument("unknown provenance name: " + name);
}

std::vector<Config> resolve_path_configs(const Graph& g, const PlanningProblem& p,
                                         const Path& path) {
  // Mirrors make_search_graph: start reuses an exact-match vertex or takes
  // index g.size(); goal likewise on the start-augmented vertex list.
  std::vector<Config> table = g.vertices;
  auto find_exact = [&table](const Config& q) {
    for (std::size_t i = 0; i < table.size(); ++i)
      if (table[i] == q) return static_cast<int>(i);
    return -1;
  };
  if (find_exact(p.start) < 0) table.push_back(p.start);
  if (find_exact(p.goal) < 0) table.push_back(p.goal);
  std::vector<Config> out;
  out.reserve(path.vertex_indices.size());
  for (int v : path.vertex_indices) {
    if (v < 0 || v >= static_cast<int>(table.size()))
      throw std::invalid_argument("resolve_path_configs: index out of range");
    out.push_back(table[v]);
  }
  return out;
}

ConfigPath to_config_path(const Graph& g, const PlanningProblem& p, const Path& path) {
  return ConfigPath{resolve_path_configs(g, p, path), path.cost};
}

NodeSet sp_nodes(const PlanningProblem& p, const Graph& dense) {
  Path path = shortest_path(dense, p);
  if (!path.feasible())
    throw std::runtime_error("sp_nodes: problem is infeasible on the dense graph");
  std::vector<Config> configs = resolve_path_configs(dense, p, path);
  NodeSet ns;
  ns.provenance = Provenance::ShortestPath;
  for (std::size_t i = 1; i + 1 < configs.size(); ++i) ns.nodes.push_back(configs[i]);
  return ns;
}

namespace {

// Folds a configuration path into the graph: exact matches reuse vertices,
// the rest are composed with radius connections; consecutive path edges are
// guaranteed present. Returns the composed graph and the path's vertex ids.
std::pair<Graph, std::vector<int>> compose_path(const Graph& g,
                                                const std::vector<Config>& configs) {
  std::vector<int> ids(configs.size(), -1);
  std::vector<Config> fresh;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    for (int v = 0; v < g.size(); ++v) {
      if (g.vertices[v] == configs[i]) {
        ids[i] = v;
        break;
      }
    }
    if (ids[i] < 0) fresh.push_back(configs[i]);
  }
  Graph out = compose_vertices(g, fresh);
  int next = g.size();
  for (std::size_t i = 0; i < configs.size(); ++i)
    if (ids[i] < 0) ids[i] = next++;
  for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
    if (!out.has_edge(ids[i], ids[i + 1]))
      out.add_edge(ids[i], ids[i + 1], distance(configs[i], configs[i + 1]), EdgeTag::Added);
  }
  return {out, ids};
}

bool contains_config(const std::vector<Config>& set, const Config& q) {
  return std::find(set.begin(), set.end(), q) != set.end();
}

}  // namespace

BottleneckResult bottleneck_nodes_detail(const PlanningProblem& p, const ConfigPath& dense_path,
                                         const Graph& sparse, const OracleConfig& cfg) {
  if (dense_path.configs.size() < 2)
    throw std::invalid_argument("bottleneck_nodes: dense path needs at least two vertices");
  if (dense_path.configs.front() != p.start || dense_path.configs.back() != p.goal)
    throw std::invalid_argument("bottleneck_nodes: dense path must run start to goal");

  BottleneckResult res;
  auto [composed, path_ids] = compose_path(sparse, dense_path.configs);
  res.composed = composed;
  res.bound = (1.0 + cfg.epsilon) * dense_path.cost;
  res.nodes.provenance = Provenance::Bottleneck;

  SearchGraph sg = make_search_graph(res.composed, p);
  std::vector<int> last_ok;
  double eta = 1.0;
  while (true) {
    InflationOverlay overlay = inflate_added_edges(res.composed, eta);
    Path path = lazy_shortest_path(sg, &overlay);
    if (!path.feasible()) break;
    double ov_cost = path_overlay_weight(sg.graph, path.vertex_indices, &overlay);
    if (ov_cost > res.bound) break;
    last_ok = path.vertex_indices;
    res.eta_final = eta;
    // A bound-satisfying path with no inflated edges stays optimal for every
    // larger eta, so the loop would run to the cap with this same path.
    // Membership in the overlay map marks an added edge even while eta == 1.
    bool uses_added = false;
    for (std::size_t i = 0; i + 1 < last_ok.size() && !uses_added; ++i)
      if (overlay.mult.count(edge_key(last_ok[i], last_ok[i + 1]))) uses_added = true;
    if (!uses_added) break;
    eta += cfg.eta_step;
    if (eta > cfg.eta_cap) break;
  }

  res.final_path = last_ok;
  std::vector<Config> interior(dense_path.configs.begin() + 1, dense_path.configs.end() - 1);
  for (int v : last_ok) {
    const Config& q = res.composed.vertices[v];
    if (contains_config(interior, q) && !contains_config(res.nodes.nodes, q))
      res.nodes.nodes.push_back(q);
  }
  return res;
}

NodeSet bottleneck_nodes(const PlanningProblem& p, const ConfigPath& dense_path,
                         const Graph& sparse, const OracleConfig& cfg) {
  return bottleneck_nodes_detail(p, dense_path, sparse, cfg).nodes;
}

namespace {

EdgePair normalize(EdgePair e) {
  if (e.first > e.second) std::swap(e.first, e.second);
  return e;
}

bool path_contains_edge(const std::vector<int>& seq, const EdgePair& e) {
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if ((seq[i] == e.first && seq[i + 1] == e.second) ||
        (seq[i] == e.second && seq[i + 1] == e.first))
      return true;
  }
  return false;
}

}  // namespace

std::vector<EdgePair> greedy_set_cover(const std::vector<std::vector<int>>& paths,
                                       const std::vector<EdgePair>& candidate_edges) {
  std::vector<EdgePair> cands;
  cands.reserve(candidate_edges.size());
  for (EdgePair e : candidate_edges) cands.push_back(normalize(e));
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

  std::vector<std::vector<int>> covers(cands.size());  // candidate -> path indices
  std::vector<int> cover_count(paths.size(), 0);
  for (std::size_t c = 0; c < cands.size(); ++c) {
    for (std::size_t pi = 0; pi < paths.size(); ++pi) {
      if (path_contains_edge(paths[pi], cands[c])) {
        covers[c].push_back(static_cast<int>(pi));
        ++cover_count[pi];
      }
    }
  }
  for (std::size_t pi = 0; pi < paths.size(); ++pi)
    if (cover_count[pi] == 0)
      throw std::invalid_argument("greedy_set_cover: path " + std::to_string(pi) +
                                  " contains no candidate edge");

  std::vector<char> covered(paths.size(), 0);
  std::size_t n_covered = 0;
  std::vector<EdgePair> chosen;
  while (n_covered < paths.size()) {
    int best = -1, best_gain = 0;
    for (std::size_t c = 0; c < cands.size(); ++c) {
      int gain = 0;
      for (int pi : covers[c])
        if (!covered[pi]) ++gain;
      if (gain > best_gain) {
        best_gain = gain;
        best = static_cast<int>(c);
      }
    }
    chosen.push_back(cands[best]);
    for (int pi : covers[best]) {
      if (!covered[pi]) {
        covered[pi] = 1;
        ++n_covered;
      }
    }
  }
  return chosen;
}

std::vector<Path> diverse_pathset(const PlanningProblem& p, const Graph& dense,
                                  const OracleConfig& cfg) {
  if (cfg.L < cfg.ell)
    throw std::invalid_argument("diverse_pathset: enumeration window L must be >= ell");
  Graph g = dense;
  std::vector<Path> out;
  for (int round = 0; round < cfg.k; ++round) {
    SearchGraph sg = make_search_graph(g, p);
    Path best = lazy_shortest_path(sg);
    if (!best.feasible()) break;
    out.push_back(best);
    if (round + 1 == cfg.k) break;

    std::vector<Path> pool = k_shortest_paths_on(sg, cfg.L);
    // Candidate edges: edges of pooled paths that live in the working graph
    // (start/goal attachment edges are search-time constructs).
    std::set<EdgePair> cand_set;
    for (const Path& q : pool)
      for (std::size_t i = 0; i + 1 < q.vertex_indices.size(); ++i) {
        int a = q.vertex_indices[i], b = q.vertex_indices[i + 1];
        if (a < g.size() && b < g.size() && g.has_edge(a, b))
          cand_set.insert(normalize({a, b}));
      }
    std::vector<EdgePair> cands(cand_set.begin(), cand_set.end());

    std::vector<const Path*> active;
    for (const Path& q : pool) active.push_back(&q);
    std::vector<std::vector<int>> invalidated;
    std::vector<EdgePair> picked;
    while (static_cast<int>(picked.size()) < cfg.ell) {
      std::erase_if(active, [&](const Path* q) {
        for (const EdgePair& e : picked)
          if (path_contains_edge(q->vertex_indices, e)) return true;
        return false;
      });
      bool progressed = false;
      for (int j = static_cast<int>(picked.size()); j < cfg.ell && !active.empty(); ++j) {
        // The adversary extends the invalidated prefix of the ranked list as
        // far as possible; candidates are tried in lexicographic order so
        // ties settle on the smallest edge.
        EdgePair best_e{-1, -1};
        std::size_t best_prefix = 0;
        for (const EdgePair& e : cands) {
          if (std::find(picked.begin(), picked.end(), e) != picked.end()) continue;
          std::size_t prefix = 0;
          while (prefix < active.size() &&
                 path_contains_edge(active[prefix]->vertex_indices, e))
            ++prefix;
          if (prefix > best_prefix) {
            best_prefix = prefix;
            best_e = e;
          }
        }
        if (best_prefix == 0) break;
        picked.push_back(best_e);
        std::erase_if(active, [&](const Path* q) {
          if (path_contains_edge(q->vertex_indices, best_e)) {
            invalidated.push_back(q->vertex_indices);
            return true;
          }
          return false;
        });
        progressed = true;
      }
      if (!progressed) break;
      std::vector<EdgePair> cover = greedy_set_cover(invalidated, cands);
      if (cover.size() <= picked.size()) picked = cover;
      if (static_cast<int>(picked.size()) >= cfg.ell) break;
    }
    if (picked.empty()) break;  // current shortest path cannot be invalidated
    g = remove_edges(g, picked);
  }
  return out;
}

NodeSet lego_nodes(const PlanningProblem& p, const Graph& dense, const Graph& sparse,
                   const OracleConfig& cfg) {
  std::vector<Path> div = diverse_pathset(p, dense, cfg);
  if (div.empty())
    throw std::runtime_error("lego_nodes: problem is infeasible on the dense graph");
  std::vector<ConfigPath> remaining;
  remaining.reserve(div.size());
  for (const Path& q : div) remaining.push_back(to_config_path(dense, p, q));

  NodeSet out;
  out.provenance = Provenance::Lego;
  Graph work = sparse;
  while (!remaining.empty()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < remaining.size(); ++i)
      if (remaining[i].cost < remaining[best].cost) best = i;
    ConfigPath xi = std::move(remaining[best]);
    remaining.erase(remaining.begin() + best);

    // Invalidate sparse shortcuts that already fall within the bound, so the
    // bottleneck search cannot bypass this path through the sparse graph.
    SearchGraph sgs = make_search_graph(work, p);
    std::vector<Path> ps = k_shortest_paths_on(sgs, cfg.L);
    double bound = (1.0 + cfg.epsilon) * xi.cost;
    std::vector<std::vector<int>> to_cover;
    std::set<EdgePair> cand_set;
    for (const Path& q : ps) {
      if (q.cost > bound) continue;
      std::vector<EdgePair> in_graph;
      for (std::size_t i = 0; i + 1 < q.vertex_indices.size(); ++i) {
        int a = q.vertex_indices[i], b = q.vertex_indices[i + 1];
        if (a < work.size() && b < work.size() && work.has_edge(a, b))
          in_graph.push_back(normalize({a, b}));
      }
      if (in_graph.empty()) continue;  // start-goal attachment only; cannot be removed
      to_cover.push_back(q.vertex_indices);
      for (const EdgePair& e : in_graph) cand_set.insert(e);
    }
    if (!to_cover.empty()) {
      std::vector<EdgePair> cands(cand_set.begin(), cand_set.end());
      std::vector<EdgePair> cover = greedy_set_cover(to_cover, cands);
      work = remove_edges(work, cover);
    }

    NodeSet bn = bottleneck_nodes(p, xi, work, cfg);
    for (const Config& q : bn.nodes)
      if (!contains_config(out.nodes, q)) out.nodes.push_back(q);
  }
  return out;
}

}  // namespace lego
