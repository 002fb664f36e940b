#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "lego/graph.hpp"

namespace lego {

namespace {

int half_index(const std::vector<HalfEdge>& list, int to) {
  auto it = std::lower_bound(list.begin(), list.end(), to,
                             [](const HalfEdge& e, int v) { return e.to < v; });
  if (it == list.end() || it->to != to) return -1;
  return static_cast<int>(it - list.begin());
}

}  // namespace

std::uint8_t SearchGraph::edge_status(int u, int v) const {
  int i = half_index(graph.adj[u], v);
  if (i < 0) throw std::invalid_argument("edge_status: edge not in graph");
  return status[u][i];
}

void SearchGraph::set_edge_status(int u, int v, bool free) {
  int i = half_index(graph.adj[u], v);
  int j = half_index(graph.adj[v], u);
  if (i < 0 || j < 0) throw std::invalid_argument("set_edge_status: edge not in graph");
  status[u][i] = status[v][j] = free ? kEdgeFree : kEdgeBlocked;
}

SearchGraph make_search_graph(const Graph& g, const PlanningProblem& p) {
  if (!is_config_free(p.world, p.start))
    throw std::invalid_argument("make_search_graph: start configuration is in collision");
  if (!is_config_free(p.world, p.goal))
    throw std::invalid_argument("make_search_graph: goal configuration is in collision");
  SearchGraph sg;
  sg.world = p.world;
  sg.base_size = g.size();
  auto find_exact = [](const Graph& gr, const Config& q) {
    for (int i = 0; i < gr.size(); ++i)
      if (gr.vertices[i] == q) return i;
    return -1;
  };
  int s = find_exact(g, p.start);
  std::vector<Config> extra;
  if (s < 0) extra.push_back(p.start);
  sg.graph = compose_vertices(g, extra);
  if (s < 0) s = sg.graph.size() - 1;
  int t = find_exact(sg.graph, p.goal);
  if (t < 0) {
    sg.graph = compose_vertices(sg.graph, {p.goal});
    t = sg.graph.size() - 1;
  }
  sg.start = s;
  sg.goal = t;
  sg.status.resize(sg.graph.size());
  for (int u = 0; u < sg.graph.size(); ++u) sg.status[u].assign(sg.graph.adj[u].size(), kEdgeUnknown);
  return sg;
}

std::vector<Config> SearchGraph::configs(const Path& p) const {
  std::vector<Config> out;
  out.reserve(p.vertex_indices.size());
  for (int v : p.vertex_indices) out.push_back(graph.vertices[v]);
  return out;
}

namespace {

struct SearchRestrictions {
  const std::vector<char>* banned_vertices = nullptr;       // size of graph, 1 = banned
  const std::unordered_set<std::uint64_t>* banned_edges = nullptr;
};

// Dijkstra over overlay weights, skipping blocked/banned edges. Among
// equal-cost paths the lexicographically smallest vertex sequence wins; ties
// compare bit-identical left-to-right weight sums, which is what the
// brute-force enumeration produces as well.
bool dijkstra(const SearchGraph& sg, int source, int target, const InflationOverlay* overlay,
              const SearchRestrictions& rs, std::vector<int>& out_seq) {
  int n = sg.graph.size();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<int> parent(n, -1);
  std::vector<char> done(n, 0);
  auto reconstruct = [&](int v) {
    std::vector<int> seq;
    for (int x = v; x != -1; x = parent[x]) seq.push_back(x);
    std::reverse(seq.begin(), seq.end());
    return seq;
  };
  using QE = std::pair<double, int>;
  std::priority_queue<QE, std::vector<QE>, std::greater<QE>> heap;
  dist[source] = 0.0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (done[u] || d != dist[u]) continue;
    done[u] = 1;
    if (u == target) break;
    const auto& list = sg.graph.adj[u];
    for (std::size_t i = 0; i < list.size(); ++i) {
      const HalfEdge& e = list[i];
      int v = e.to;
      if (done[v]) continue;
      if (sg.status[u][i] == kEdgeBlocked) continue;
      if (rs.banned_vertices && (*rs.banned_vertices)[v]) continue;
      if (rs.banned_edges && rs.banned_edges->count(edge_key(u, v))) continue;
      double w = e.weight * (overlay ? overlay->multiplier(u, v) : 1.0);
      double nd = dist[u] + w;
      if (nd < dist[v]) {
        dist[v] = nd;
        parent[v] = u;
        heap.push({nd, v});
      } else if (nd == dist[v] && parent[v] != u) {
        auto cur = reconstruct(v);
        auto cand = reconstruct(u);
        cand.push_back(v);
        if (std::lexicographical_compare(cand.begin(), cand.end(), cur.begin(), cur.end())) {
          parent[v] = u;
          heap.push({nd, v});
        }
      }
    }
  }
  if (!done[target]) return false;
  out_seq = reconstruct(target);
  return true;
}

// Lazy search loop: find a candidate, collision-check its edges front to
// back, block the first colliding edge, repeat. Free/blocked outcomes stick
// to the search graph and are shared by later searches.
bool lazy_search(SearchGraph& sg, int source, int target, const InflationOverlay* overlay,
                 const SearchRestrictions& rs, std::vector<int>& out_seq) {
  if (source == target) {
    out_seq = {source};
    return true;
  }
  while (true) {
    std::vector<int> seq;
    if (!dijkstra(sg, source, target, overlay, rs, seq)) return false;
    bool valid = true;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
      int u = seq[i], v = seq[i + 1];
      std::uint8_t st = sg.edge_status(u, v);
      if (st == kEdgeFree) continue;
      bool free = is_edge_free(sg.world, sg.graph.vertices[u], sg.graph.vertices[v]);
      sg.set_edge_status(u, v, free);
      if (!free) {
        valid = false;
        break;
      }
    }
    if (valid) {
      out_seq = std::move(seq);
      return true;
    }
  }
}

}  // namespace

Path lazy_shortest_path(SearchGraph& sg, const InflationOverlay* overlay) {
  std::vector<int> seq;
  if (!lazy_search(sg, sg.start, sg.goal, overlay, {}, seq)) return infeasible_path();
  return Path{seq, path_weight(sg.graph, seq)};
}

Path shortest_path(const Graph& g, const PlanningProblem& p, const InflationOverlay* overlay) {
  SearchGraph sg = make_search_graph(g, p);
  return lazy_shortest_path(sg, overlay);
}

std::vector<Path> k_shortest_paths_on(SearchGraph& sg, int L) {
  std::vector<Path> accepted;
  if (L < 1) return accepted;
  Path first = lazy_shortest_path(sg);
  if (!first.feasible()) return accepted;
  accepted.push_back(first);

  struct CandLess {
    bool operator()(const Path& a, const Path& b) const {
      if (a.cost != b.cost) return a.cost < b.cost;
      return a.vertex_indices < b.vertex_indices;
    }
  };
  std::set<Path, CandLess> candidates;

  while (static_cast<int>(accepted.size()) < L) {
    const std::vector<int>& prev = accepted.back().vertex_indices;
    for (std::size_t i = 0; i + 1 < prev.size(); ++i) {
      std::vector<int> root(prev.begin(), prev.begin() + i + 1);
      std::vector<char> banned_v(sg.graph.size(), 0);
      for (std::size_t j = 0; j < i; ++j) banned_v[prev[j]] = 1;
      std::unordered_set<std::uint64_t> banned_e;
      for (const Path& q : accepted) {
        const auto& qs = q.vertex_indices;
        if (qs.size() > i + 1 && std::equal(root.begin(), root.end(), qs.begin()))
          banned_e.insert(edge_key(qs[i], qs[i + 1]));
      }
      SearchRestrictions rs{&banned_v, banned_e.empty() ? nullptr : &banned_e};
      std::vector<int> spur;
      if (!lazy_search(sg, prev[i], sg.goal, nullptr, rs, spur)) continue;
      root.insert(root.end(), spur.begin() + 1, spur.end());
      Path cand{root, path_weight(sg.graph, root)};
      candidates.insert(std::move(cand));
    }
    bool advanced = false;
    while (!candidates.empty()) {
      Path best = *candidates.begin();
      candidates.erase(candidates.begin());
      if (std::find(accepted.begin(), accepted.end(), best) == accepted.end()) {
        accepted.push_back(std::move(best));
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return accepted;
}

std::vector<Path> k_shortest_paths(const Graph& g, const PlanningProblem& p, int L) {
  SearchGraph sg = make_search_graph(g, p);
  return k_shortest_paths_on(sg, L);
}

}  // namespace lego
