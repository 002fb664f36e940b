#include <doctest.h>

#include <cmath>
#include <queue>

#include "lego/graph.hpp"
#include "lego/json_io.hpp"
#include "lego/rng.hpp"

using namespace lego;

namespace {

int component_count(const Graph& g) {
  std::vector<char> seen(g.size(), 0);
  int comps = 0;
  for (int s = 0; s < g.size(); ++s) {
    if (seen[s]) continue;
    ++comps;
    std::queue<int> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const HalfEdge& he : g.adj[v])
        if (!seen[he.to]) {
          seen[he.to] = 1;
          q.push(he.to);
        }
    }
  }
  return comps;
}

// Reconstruct the 1-based index from a radical-inverse value. Scales x by
// base^digits in one shot so base-3/5 representation error stays below the
// rounding threshold instead of compounding per digit.
std::uint64_t invert_radical(double x, int base, std::uint64_t max_index) {
  int digits = 0;
  std::uint64_t place = 1;
  while (place <= max_index) {
    place *= base;
    ++digits;
  }
  auto scaled =
      static_cast<std::uint64_t>(std::llround(x * static_cast<double>(place)));
  std::uint64_t index = 0;
  for (int k = 0; k < digits; ++k) {
    index = index * base + scaled % base;
    scaled /= base;
  }
  return index;
}

Graph line_graph(const std::vector<double>& xs, double radius) {
  std::vector<Config> pts;
  for (double x : xs) pts.push_back({x, 0.5});
  return build_rdisc_graph(pts, radius);
}

}  // namespace

TEST_CASE("halton radical inverses") {
  CHECK(halton_point(1, 1)[0] == doctest::Approx(0.5));
  CHECK(halton_point(3, 1)[0] == doctest::Approx(0.75));
  // index 5: binary 101 reversed -> 0.101b; ternary 12 reversed -> 0.21t.
  Config h5 = halton_point(5, 2);
  CHECK(h5[0] == doctest::Approx(0.625).epsilon(1e-15));
  CHECK(h5[1] == doctest::Approx(7.0 / 9.0).epsilon(1e-15));
  auto first3 = halton_points(3, 2);
  REQUIRE(first3.size() == 3);
  CHECK(first3[0][0] == doctest::Approx(0.5));
  CHECK(first3[0][1] == doctest::Approx(1.0 / 3.0));
  CHECK(first3[1][0] == doctest::Approx(0.25));
  CHECK(first3[1][1] == doctest::Approx(2.0 / 3.0));
  CHECK(first3[2][0] == doctest::Approx(0.75));
  CHECK(first3[2][1] == doctest::Approx(1.0 / 9.0));
  CHECK_THROWS_AS(halton_point(1, 64), std::invalid_argument);
}

TEST_CASE("radical inverse digits round-trip") {
  Rng rng(5);
  for (int base : {2, 3, 5}) {
    for (int t = 0; t < 200; ++t) {
      std::uint64_t index = 1 + rng.uniform_int(1 << 16);
      double x = halton_radical_inverse(index, base);
      CHECK(invert_radical(x, base, 1 << 16) == index);
    }
  }
}

TEST_CASE("r-disc construction") {
  SUBCASE("distance beyond radius yields no edge") {
    Graph g = line_graph({0.1, 0.4}, 0.2);
    CHECK(g.edge_count() == 0);
  }
  SUBCASE("three collinear points at spacing 0.1") {
    Graph g = line_graph({0.1, 0.2, 0.3}, 0.15);
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 2));
    CHECK_FALSE(g.has_edge(0, 2));
    CHECK(g.find_edge(0, 1)->weight == doctest::Approx(0.1));
  }
  SUBCASE("halton roadmap at the default radius is connected") {
    Graph g = build_rdisc_graph(halton_points(200, 2), connect_radius(200, 2));
    CHECK(g.size() == 200);
    CHECK(component_count(g) == 1);
  }
  SUBCASE("symmetry and no self loops") {
    Graph g = build_rdisc_graph(halton_points(40, 2), 0.3);
    for (int u = 0; u < g.size(); ++u)
      for (const HalfEdge& he : g.adj[u]) {
        CHECK(he.to != u);
        const HalfEdge* back = g.find_edge(he.to, u);
        REQUIRE(back != nullptr);
        CHECK(back->weight == he.weight);
        CHECK(back->tag == he.tag);
      }
  }
  SUBCASE("radius must be positive") {
    CHECK_THROWS_AS(build_rdisc_graph({{0.0, 0.0}}, 0.0), std::invalid_argument);
  }
}

TEST_CASE("connection radius formula") {
  CHECK(connect_radius(200, 2) ==
        doctest::Approx(1.5 * std::sqrt(std::log(200.0) / 200.0)).epsilon(1e-15));
  CHECK(connect_radius(2000, 3, 2.0) ==
        doctest::Approx(2.0 * std::cbrt(std::log(2000.0) / 2000.0)).epsilon(1e-15));
}

TEST_CASE("compose_vertices") {
  Graph g = line_graph({0.1, 0.2, 0.45, 0.55}, 0.15);
  REQUIRE(component_count(g) == 2);
  SUBCASE("empty composition is the identity") {
    Graph h = compose_vertices(g, {});
    CHECK(graph_to_json(h).dump() == graph_to_json(g).dump());
  }
  SUBCASE("a bridging vertex merges the components") {
    Graph h = compose_vertices(g, {{0.32, 0.5}});
    CHECK(h.size() == 5);
    CHECK(component_count(h) == 1);
    CHECK(g.size() == 4);  // input untouched
    for (const HalfEdge& he : h.adj[4]) CHECK(he.tag == EdgeTag::Added);
  }
  SUBCASE("new vertices also connect among themselves") {
    Graph h = compose_vertices(g, {{0.32, 0.5}, {0.37, 0.5}});
    CHECK(h.has_edge(4, 5));
    CHECK(h.find_edge(4, 5)->weight == doctest::Approx(0.05));
  }
  SUBCASE("duplicate configs are allowed; zero-length edges suppressed") {
    Graph h = compose_vertices(g, {{0.1, 0.5}});
    CHECK(h.size() == 5);
    CHECK_FALSE(h.has_edge(0, 4));  // distance 0 to vertex 0
  }
}

TEST_CASE("remove_edges") {
  SUBCASE("empty removal is the identity") {
    Graph g = line_graph({0.1, 0.2}, 0.15);
    Graph h = remove_edges(g, {});
    CHECK(graph_to_json(h).dump() == graph_to_json(g).dump());
  }
  SUBCASE("removing the only edge disconnects") {
    Graph g = line_graph({0.1, 0.2}, 0.15);
    Graph h = remove_edges(g, {{0, 1}});
    CHECK(h.edge_count() == 0);
    PlanningProblem p{{0.1, 0.5}, {0.2, 0.5}, World{}};
    Path path = shortest_path(h, p);
    CHECK_FALSE(path.feasible());
    CHECK(path.cost == kCostMax);
  }
  SUBCASE("removing one parallel route leaves the other cost") {
    // Diamond: 0 -(0.1)- 1 -(0.1)- 3 and 0 -(0.12)- 2 -(0.12)- 3.
    Graph g;
    g.vertices = {{0.0, 0.5}, {0.1, 0.5}, {0.05, 0.6}, {0.2, 0.5}};
    g.adj.resize(4);
    g.connect_radius = 0.2;
    g.add_edge(0, 1, 0.1, EdgeTag::Sparse);
    g.add_edge(1, 3, 0.1, EdgeTag::Sparse);
    g.add_edge(0, 2, 0.12, EdgeTag::Sparse);
    g.add_edge(2, 3, 0.12, EdgeTag::Sparse);
    World w;
    PlanningProblem p{{0.0, 0.5}, {0.2, 0.5}, w};
    CHECK(shortest_path(g, p).cost == doctest::Approx(0.2));
    Graph h = remove_edges(g, {{1, 3}});
    CHECK(shortest_path(h, p).cost == doctest::Approx(0.24));
  }
  SUBCASE("missing edges are reported") {
    Graph g = line_graph({0.1, 0.2}, 0.15);
    CHECK_THROWS_WITH_AS(remove_edges(g, {{0, 9}}), doctest::Contains("(0, 9)"),
                         std::invalid_argument);
  }
}

TEST_CASE("monotonicity of composition and removal") {
  Rng rng(77);
  World w;
  for (int t = 0; t < 30; ++t) {
    int n = 5 + static_cast<int>(rng.uniform_int(5));
    std::vector<Config> pts;
    for (int i = 0; i < n; ++i) pts.push_back({rng.uniform(), rng.uniform()});
    Graph g = build_rdisc_graph(pts, rng.uniform(0.3, 0.7));
    PlanningProblem p{pts[0], pts[n - 1], w};
    double base = shortest_path(g, p).cost;
    Graph plus = compose_vertices(g, {{rng.uniform(), rng.uniform()}});
    CHECK(shortest_path(plus, p).cost <= base + 1e-12);
    if (g.edge_count() > 0) {
      int u = static_cast<int>(rng.uniform_int(n));
      while (g.adj[u].empty()) u = (u + 1) % n;
      int v = g.adj[u][rng.uniform_int(g.adj[u].size())].to;
      Graph minus = remove_edges(g, {{u, v}});
      CHECK(shortest_path(minus, p).cost >= base - 1e-12);
    }
  }
}

TEST_CASE("inflation overlays") {
  // 0 -(sparse 1.0)- 1 -(added 0.5)- 2, plus direct added 0 - 2 of 1.0.
  Graph g;
  g.vertices = {{0.0, 0.0}, {0.6, 0.0}, {0.6, 0.5}};
  g.adj.resize(3);
  g.connect_radius = 1.0;
  g.add_edge(0, 1, 1.0, EdgeTag::Sparse);
  g.add_edge(1, 2, 0.5, EdgeTag::Added);
  g.add_edge(0, 2, 1.0, EdgeTag::Added);
  SUBCASE("eta below one is rejected") {
    CHECK_THROWS_AS(inflate_added_edges(g, 0.5), std::invalid_argument);
  }
  SUBCASE("eta one changes nothing") {
    InflationOverlay ov = inflate_added_edges(g, 1.0);
    World w;
    PlanningProblem p{{0.0, 0.0}, {0.6, 0.5}, w};
    Path a = shortest_path(g, p);
    Path b = shortest_path(g, p, &ov);
    CHECK(a.vertex_indices == b.vertex_indices);
    CHECK(a.cost == b.cost);
  }
  SUBCASE("overlay weights only the added edges") {
    InflationOverlay ov = inflate_added_edges(g, 4.0);
    CHECK(ov.multiplier(0, 1) == 1.0);
    CHECK(ov.multiplier(1, 2) == 4.0);
    CHECK(path_overlay_weight(g, {0, 1, 2}, &ov) == doctest::Approx(3.0));
    CHECK(path_weight(g, {0, 1, 2}) == doctest::Approx(1.5));
  }
  SUBCASE("single added route reports true cost under heavy inflation") {
    Graph h;
    h.vertices = {{0.0, 0.0}, {1.0, 0.0}};
    h.adj.resize(2);
    h.connect_radius = 0.1;
    h.add_edge(0, 1, 1.0, EdgeTag::Added);
    InflationOverlay ov = inflate_added_edges(h, 5.0);
    World w;
    PlanningProblem p{{0.0, 0.0}, {1.0, 0.0}, w};
    Path path = shortest_path(h, p, &ov);
    CHECK(path.cost == doctest::Approx(1.0));  // true, uninflated cost
    CHECK(path_overlay_weight(h, path.vertex_indices, &ov) == doctest::Approx(5.0));
  }
  SUBCASE("raising eta never cheapens the overlay optimum") {
    Rng rng(31);
    World w;
    for (int t = 0; t < 20; ++t) {
      int n = 6;
      std::vector<Config> pts;
      for (int i = 0; i < n; ++i) pts.push_back({rng.uniform(), rng.uniform()});
      Graph h = build_rdisc_graph(pts, 0.8);
      Graph composed = compose_vertices(h, {{rng.uniform(), rng.uniform()}});
      PlanningProblem p{pts[0], pts[1], w};
      double prev = -1.0;
      for (double eta : {1.0, 2.0, 4.0, 16.0}) {
        InflationOverlay ov = inflate_added_edges(composed, eta);
        Path path = shortest_path(composed, p, &ov);
        double oc = path.feasible()
                        ? path_overlay_weight(composed, path.vertex_indices, &ov)
                        : kCostMax;
        CHECK(oc >= prev - 1e-12);
        prev = oc;
      }
    }
  }
}

TEST_CASE("path order compares cost then sequence") {
  CHECK(path_order_less(1.0, {0, 1}, 2.0, {0, 2}));
  CHECK_FALSE(path_order_less(2.0, {0, 1}, 1.0, {0, 2}));
  CHECK(path_order_less(1.0, {0, 1, 5}, 1.0, {0, 2, 3}));
  CHECK_FALSE(path_order_less(1.0, {0, 2, 3}, 1.0, {0, 2}));
  CHECK(path_order_less(1.0, {0, 2}, 1.0, {0, 2, 3}));
}

TEST_CASE("edge bookkeeping") {
  Graph g = line_graph({0.1, 0.2, 0.3}, 0.15);
  CHECK_THROWS_AS(g.add_edge(0, 0, 1.0, EdgeTag::Sparse), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 7, 1.0, EdgeTag::Sparse), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 1, 1.0, EdgeTag::Sparse), std::invalid_argument);
  CHECK(g.find_edge(0, 2) == nullptr);
  CHECK(edge_key(3, 5) == edge_key(5, 3));
  CHECK(edge_key(3, 5) != edge_key(3, 6));
}
