#include "lego/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lego {

std::size_t Graph::edge_count() const {
  std::size_t n = 0;
  for (const auto& list : adj) n += list.size();
  return n / 2;
}

namespace {

// Sorted-by-neighbor adjacency lists make edge lookup a binary search and all
// traversal orders deterministic.
std::vector<HalfEdge>::const_iterator find_half(const std::vector<HalfEdge>& list, int to) {
  auto it = std::lower_bound(list.begin(), list.end(), to,
                             [](const HalfEdge& e, int v) { return e.to < v; });
  if (it != list.end() && it->to == to) return it;
  return list.end();
}

}  // namespace

bool Graph::has_edge(int u, int v) const { return find_edge(u, v) != nullptr; }

const HalfEdge* Graph::find_edge(int u, int v) const {
  if (u < 0 || u >= size() || v < 0 || v >= size()) return nullptr;
  auto it = find_half(adj[u], v);
  return it == adj[u].end() ? nullptr : &*it;
}

void Graph::add_edge(int u, int v, double weight, EdgeTag tag) {
  if (u == v) throw std::invalid_argument("add_edge: self loops are not allowed");
  if (u < 0 || u >= size() || v < 0 || v >= size())
    throw std::invalid_argument("add_edge: vertex out of range");
  if (has_edge(u, v)) throw std::invalid_argument("add_edge: edge already present");
  auto insert_half = [](std::vector<HalfEdge>& list, int to, double w, EdgeTag t) {
    auto it = std::lower_bound(list.begin(), list.end(), to,
                               [](const HalfEdge& e, int v2) { return e.to < v2; });
    list.insert(it, HalfEdge{to, w, t});
  };
  insert_half(adj[u], v, weight, tag);
  insert_half(adj[v], u, weight, tag);
}

namespace {
constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                           43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
}

double halton_radical_inverse(std::uint64_t index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

Config halton_point(std::uint64_t index, int dim) {
  if (index < 1) throw std::invalid_argument("halton_point: index is 1-based");
  if (dim < 1 || dim > static_cast<int>(std::size(kPrimes)))
    throw std::invalid_argument("halton_point: unsupported dimension");
  Config q(dim);
  for (int k = 0; k < dim; ++k) q[k] = halton_radical_inverse(index, kPrimes[k]);
  return q;
}

std::vector<Config> halton_points(std::uint64_t count, int dim) {
  std::vector<Config> pts;
  pts.reserve(count);
  for (std::uint64_t i = 1; i <= count; ++i) pts.push_back(halton_point(i, dim));
  return pts;
}

double connect_radius(int n, int dim, double gamma) {
  if (n < 2) throw std::invalid_argument("connect_radius: need n >= 2");
  return gamma * std::pow(std::log(static_cast<double>(n)) / n, 1.0 / dim);
}

Graph build_rdisc_graph(const std::vector<Config>& points, double radius) {
  if (radius <= 0) throw std::invalid_argument("build_rdisc_graph: radius must be positive");
  Graph g;
  g.vertices = points;
  g.adj.resize(points.size());
  g.connect_radius = radius;
  int n = g.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double d = distance(points[i], points[j]);
      if (d > 0.0 && d <= radius) {
        g.adj[i].push_back(HalfEdge{j, d, EdgeTag::Sparse});
        g.adj[j].push_back(HalfEdge{i, d, EdgeTag::Sparse});
      }
    }
  }
  for (auto& list : g.adj)
    std::sort(list.begin(), list.end(),
              [](const HalfEdge& a, const HalfEdge& b) { return a.to < b.to; });
  return g;
}

Graph compose_vertices(const Graph& g, const std::vector<Config>& points) {
  Graph out = g;
  int old_n = out.size();
  for (const Config& q : points) {
    if (static_cast<int>(q.size()) != out.dim() && old_n > 0)
      throw std::invalid_argument("compose_vertices: config dimension mismatch");
    out.vertices.push_back(q);
    out.adj.emplace_back();
  }
  int n = out.size();
  for (int i = old_n; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j >= old_n && j <= i) continue;  // new-new pairs handled once, from the lower index
      double d = distance(out.vertices[i], out.vertices[j]);
      if (d > 0.0 && d <= out.connect_radius && !out.has_edge(i, j))
        out.add_edge(i, j, d, EdgeTag::Added);
    }
  }
  return out;
}

Graph remove_edges(const Graph& g, const std::vector<EdgePair>& edges) {
  Graph out = g;
  for (const auto& [u, v] : edges) {
    if (!out.has_edge(u, v))
      throw std::invalid_argument("remove_edges: edge (" + std::to_string(u) + ", " +
                                  std::to_string(v) + ") not in graph");
    auto erase_half = [](std::vector<HalfEdge>& list, int to) {
      auto it = std::lower_bound(list.begin(), list.end(), to,
                                 [](const HalfEdge& e, int v2) { return e.to < v2; });
      list.erase(it);
    };
    erase_half(out.adj[u], v);
    erase_half(out.adj[v], u);
  }
  return out;
}

InflationOverlay inflate_added_edges(const Graph& g, double eta) {
  if (eta < 1.0) throw std::invalid_argument("inflate_added_edges: eta must be >= 1");
  InflationOverlay ov;
  for (int u = 0; u < g.size(); ++u)
    for (const HalfEdge& e : g.adj[u])
      if (u < e.to && e.tag == EdgeTag::Added) ov.mult[edge_key(u, e.to)] = eta;
  return ov;
}

Path infeasible_path() { return Path{{}, kCostMax}; }

double path_weight(const Graph& g, const std::vector<int>& seq) {
  double c = 0.0;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const HalfEdge* e = g.find_edge(seq[i], seq[i + 1]);
    if (!e) throw std::invalid_argument("path_weight: path edge not in graph");
    c += e->weight;
  }
  return c;
}

double path_overlay_weight(const Graph& g, const std::vector<int>& seq,
                           const InflationOverlay* overlay) {
  double c = 0.0;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const HalfEdge* e = g.find_edge(seq[i], seq[i + 1]);
    if (!e) throw std::invalid_argument("path_overlay_weight: path edge not in graph");
    double m = overlay ? overlay->multiplier(seq[i], seq[i + 1]) : 1.0;
    c += e->weight * m;
  }
  return c;
}

bool path_order_less(double cost_a, const std::vector<int>& a, double cost_b,
                     const std::vector<int>& b) {
  if (cost_a != cost_b) return cost_a < cost_b;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace lego
