#pragma once

#include <string>
#include <vector>

#include "lego/graph.hpp"
#include "lego/worlds.hpp"

namespace lego {

struct OracleConfig {
  double epsilon = 0.1;   // suboptimality slack on extracted alternatives
  double eta_step = 0.5;  // additive inflation increment
  double eta_cap = 1e6;
  int k = 3;    // diverse rounds
  int ell = 3;  // adversary edge budget per round
  int L = 50;   // shortest-path enumeration window
};

enum class Provenance { ShortestPath, Bottleneck, Diverse, Lego };

std::string provenance_name(Provenance p);
Provenance provenance_from_name(const std::string& name);

struct NodeSet {
  std::vector<Config> nodes;
  Provenance provenance = Provenance::ShortestPath;
};

// A path carried by configuration rather than by graph indices, so it can be
// re-composed into other graphs.
struct ConfigPath {
  std::vector<Config> configs;  // includes start and goal endpoints
  double cost = kCostMax;
};

// Rebuilds the start/goal indexing that make_search_graph produces, mapping a
// search-result path back to configurations.
std::vector<Config> resolve_path_configs(const Graph& g, const PlanningProblem& p,
                                         const Path& path);
ConfigPath to_config_path(const Graph& g, const PlanningProblem& p, const Path& path);

// Interior vertices of the dense-graph shortest path. Throws if the problem is
// infeasible on the dense graph.
NodeSet sp_nodes(const PlanningProblem& p, const Graph& dense);

struct BottleneckResult {
  NodeSet nodes;
  Graph composed;                // sparse with the dense path folded in
  std::vector<int> final_path;   // last path that satisfied the cost bound
  double eta_final = 1.0;        // inflation at which final_path was found
  double bound = 0.0;            // (1 + eps) * cost(dense path)
};

// Folds the dense path into the sparse graph (tagged Added), inflates the
// added edges by growing eta until the inflated shortest path exceeds
// (1+eps) * cost(dense path), and returns the dense-path vertices the last
// bound-satisfying path still used. Nodes exclude start and goal.
BottleneckResult bottleneck_nodes_detail(const PlanningProblem& p, const ConfigPath& dense_path,
                                         const Graph& sparse, const OracleConfig& cfg);
NodeSet bottleneck_nodes(const PlanningProblem& p, const ConfigPath& dense_path,
                         const Graph& sparse, const OracleConfig& cfg);

// Greedy minimum set cover: repeatedly pick the candidate edge lying on the
// most uncovered paths, tie-broken by lexicographically smallest edge. Throws
// if some path contains no candidate edge.
std::vector<EdgePair> greedy_set_cover(const std::vector<std::vector<int>>& paths,
                                       const std::vector<EdgePair>& candidate_edges);

// k rounds of: record the current shortest path, then let a budget-ell
// adversary invalidate leading entries of the L-shortest-path list (compacted
// by set cover) and remove those edges. Stops early if the graph disconnects
// or the current shortest path cannot be invalidated.
std::vector<Path> diverse_pathset(const PlanningProblem& p, const Graph& dense,
                                  const OracleConfig& cfg);

// Full extraction: diverse pathset on the dense graph; then, cheapest first,
// strip sparse-graph shortcuts within the (1+eps) bound and collect bottleneck
// nodes of each diverse path against the stripped sparse graph.
NodeSet lego_nodes(const PlanningProblem& p, const Graph& dense, const Graph& sparse,
                   const OracleConfig& cfg);

}  // namespace lego
