#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lego/worlds.hpp"

namespace lego {

inline constexpr double kCostMax = 1e9;

enum class EdgeTag : std::uint8_t { Sparse, Added };

struct HalfEdge {
  int to = -1;
  double weight = 0.0;
  EdgeTag tag = EdgeTag::Sparse;
};

using EdgePair = std::pair<int, int>;

inline std::uint64_t edge_key(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

// Undirected weighted graph over configurations. Adjacency lists are kept
// sorted by neighbor index so traversal order is deterministic.
struct Graph {
  std::vector<Config> vertices;
  std::vector<std::vector<HalfEdge>> adj;
  double connect_radius = 0.0;

  int size() const { return static_cast<int>(vertices.size()); }
  int dim() const { return vertices.empty() ? 0 : static_cast<int>(vertices[0].size()); }
  std::size_t edge_count() const;
  bool has_edge(int u, int v) const;
  const HalfEdge* find_edge(int u, int v) const;
  void add_edge(int u, int v, double weight, EdgeTag tag);
};

// nth coordinate of the Halton sequence point with 1-based index, bases being
// the first dim primes.
double halton_radical_inverse(std::uint64_t index, int base);
Config halton_point(std::uint64_t index, int dim);
std::vector<Config> halton_points(std::uint64_t count, int dim);

// Default connection radius gamma * (log n / n)^(1/d), gamma = 1.5.
double connect_radius(int n, int dim, double gamma = 1.5);

// Undirected r-disc graph: edge iff 0 < dist <= radius, weight = distance.
Graph build_rdisc_graph(const std::vector<Config>& points, double radius);

// New graph with the given configurations appended; each gets edges to every
// vertex (old or new) within connect_radius, tagged Added.
Graph compose_vertices(const Graph& g, const std::vector<Config>& points);

// New graph without the listed undirected edges; throws if any is missing.
Graph remove_edges(const Graph& g, const std::vector<EdgePair>& edges);

// Multiplicative weight overlay; edges not present map to 1.0. Never mutates
// graph weights.
struct InflationOverlay {
  std::unordered_map<std::uint64_t, double> mult;

  double multiplier(int u, int v) const {
    auto it = mult.find(edge_key(u, v));
    return it == mult.end() ? 1.0 : it->second;
  }
};

// Overlay mapping every Added-tagged edge of g to eta (eta >= 1).
InflationOverlay inflate_added_edges(const Graph& g, double eta);

struct Path {
  std::vector<int> vertex_indices;
  double cost = kCostMax;

  bool feasible() const { return !vertex_indices.empty(); }
  bool operator==(const Path& o) const { return vertex_indices == o.vertex_indices; }
};

Path infeasible_path();

// Cost helpers recompute sums left-to-right along the sequence so equal paths
// always produce bit-identical costs.
double path_weight(const Graph& g, const std::vector<int>& seq);
double path_overlay_weight(const Graph& g, const std::vector<int>& seq,
                           const InflationOverlay* overlay);

// (cost, lexicographic vertex sequence) order used for all path ranking.
bool path_order_less(double cost_a, const std::vector<int>& a, double cost_b,
                     const std::vector<int>& b);

enum : std::uint8_t { kEdgeUnknown = 0, kEdgeFree = 1, kEdgeBlocked = 2 };

// Start and goal composed into a copy of g (exact-coordinate matches reuse the
// existing vertex). Searches on the composed graph share the collision-check
// outcomes, stored per half-edge alongside the adjacency lists.
struct SearchGraph {
  Graph graph;
  World world;
  int start = -1;
  int goal = -1;
  int base_size = 0;  // vertex count of the graph before composing
  std::vector<std::vector<std::uint8_t>> status;

  std::uint8_t edge_status(int u, int v) const;
  void set_edge_status(int u, int v, bool free);
  std::vector<Config> configs(const Path& p) const;
};

SearchGraph make_search_graph(const Graph& g, const PlanningProblem& p);

// Lazy shortest path on a prepared search graph: repeatedly search by overlay
// weight, collision-check the candidate's unchecked edges in order, drop the
// first colliding edge, until a fully valid path or disconnection. Returned
// cost is the true (un-inflated) weight sum.
Path lazy_shortest_path(SearchGraph& sg, const InflationOverlay* overlay = nullptr);

// Convenience wrappers that compose start/goal themselves.
Path shortest_path(const Graph& g, const PlanningProblem& p,
                   const InflationOverlay* overlay = nullptr);

// Up to L cheapest collision-free loopless paths in (cost, lex) order;
// Yen-style deviations with lazy validation.
std::vector<Path> k_shortest_paths_on(SearchGraph& sg, int L);
std::vector<Path> k_shortest_paths(const Graph& g, const PlanningProblem& p, int L);

}  // namespace lego
