#include <doctest.h>

#include <algorithm>
#include <set>

#include "lego/graph.hpp"
#include "lego/rng.hpp"
#include "lego/worlds.hpp"
#include "support/brute.hpp"

using namespace lego;

namespace {

Graph weighted_graph(std::vector<Config> pts,
                     const std::vector<std::tuple<int, int, double>>& edges,
                     double radius) {
  Graph g;
  g.vertices = std::move(pts);
  g.adj.resize(g.vertices.size());
  g.connect_radius = radius;
  for (auto [u, v, w] : edges) g.add_edge(u, v, w, EdgeTag::Sparse);
  return g;
}

bool same_path(const Path& a, const Path& b) {
  return a.cost == b.cost && a.vertex_indices == b.vertex_indices;
}

}  // namespace

TEST_CASE("shortest path basics") {
  World w;
  SUBCASE("start equals goal") {
    Graph g = build_rdisc_graph(halton_points(5, 2), 0.5);
    PlanningProblem p{{0.3, 0.3}, {0.3, 0.3}, w};
    Path path = shortest_path(g, p);
    REQUIRE(path.feasible());
    CHECK(path.cost == 0.0);
    CHECK(path.vertex_indices.size() == 1);
  }
  SUBCASE("two cheap hops beat one expensive edge") {
    Graph g = weighted_graph({{0.1, 0.5}, {0.5, 0.5}, {0.9, 0.5}},
                             {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 3.0}}, 1.0);
    PlanningProblem p{{0.1, 0.5}, {0.9, 0.5}, w};
    Path path = shortest_path(g, p);
    CHECK(path.cost == doctest::Approx(2.0));
    CHECK(path.vertex_indices == std::vector<int>{0, 1, 2});
  }
  SUBCASE("equal-cost routes break ties lexicographically") {
    Graph g = weighted_graph({{0.1, 0.5}, {0.5, 0.5}, {0.9, 0.5}},
                             {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 2.0}}, 1.0);
    PlanningProblem p{{0.1, 0.5}, {0.9, 0.5}, w};
    Path path = shortest_path(g, p);
    CHECK(path.cost == doctest::Approx(2.0));
    CHECK(path.vertex_indices == std::vector<int>{0, 1, 2});
  }
  SUBCASE("disconnection reports the sentinel cost") {
    Graph g = build_rdisc_graph({{0.1, 0.1}, {0.9, 0.9}}, 0.2);
    PlanningProblem p{{0.1, 0.1}, {0.9, 0.9}, w};
    Path path = shortest_path(g, p);
    CHECK_FALSE(path.feasible());
    CHECK(path.cost == kCostMax);
    CHECK(path.vertex_indices.empty());
  }
  SUBCASE("colliding endpoints are rejected") {
    World walled = generate_world(3, GapClass::Small, 1);
    REQUIRE(walled.obstacles.size() >= 1);
    Rect r = walled.obstacles[0];
    Config inside = {0.5 * (r.min_x + r.max_x), 0.5 * (r.min_y + r.max_y)};
    REQUIRE_FALSE(is_config_free(walled, inside));
    Graph g = build_rdisc_graph(halton_points(30, 2), 0.4);
    CHECK_THROWS_AS(shortest_path(g, PlanningProblem{inside, {0.9, 0.5}, walled}),
                    std::invalid_argument);
    CHECK_THROWS_AS(shortest_path(g, PlanningProblem{{0.1, 0.5}, inside, walled}),
                    std::invalid_argument);
  }
}

TEST_CASE("grid with a wall matches exhaustive search") {
  // Thin vertical wall through the middle column, one gap at y = 0.5.
  World w;
  w.obstacles.push_back({0.45, 0.0, 0.55, 0.46});
  w.obstacles.push_back({0.45, 0.54, 0.55, 1.0});
  std::vector<Config> pts;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) pts.push_back({0.1 + 0.2 * i, 0.1 + 0.2 * j});
  Graph g = build_rdisc_graph(pts, 0.25);  // 4-neighbour grid
  PlanningProblem p{{0.1, 0.1}, {0.9, 0.9}, w};
  std::vector<Path> all = brute::enumerate_paths(g, p);
  REQUIRE(!all.empty());
  Path best = shortest_path(g, p);
  CHECK(same_path(best, all.front()));
  // The staircase grid is full of cost ties; order within a tie is not part of
  // the contract, so compare costs and membership rather than sequences.
  std::vector<Path> top = k_shortest_paths(g, p, 6);
  REQUIRE(top.size() == std::min<std::size_t>(6, all.size()));
  for (std::size_t i = 0; i < top.size(); ++i) {
    CHECK(top[i].cost == doctest::Approx(all[i].cost).epsilon(1e-12));
    CHECK(std::any_of(all.begin(), all.end(),
                      [&](const Path& q) { return q.vertex_indices == top[i].vertex_indices; }));
    for (std::size_t j = i + 1; j < top.size(); ++j)
      CHECK(top[i].vertex_indices != top[j].vertex_indices);
  }
}

TEST_CASE("k shortest paths basics") {
  World w;
  SUBCASE("single route returns one path") {
    Graph g = weighted_graph({{0.1, 0.5}, {0.5, 0.5}, {0.9, 0.5}},
                             {{0, 1, 1.0}, {1, 2, 1.0}}, 1.0);
    PlanningProblem p{{0.1, 0.5}, {0.9, 0.5}, w};
    std::vector<Path> paths = k_shortest_paths(g, p, 5);
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].vertex_indices == std::vector<int>{0, 1, 2});
  }
  SUBCASE("diamond lists both routes in cost order") {
    Graph g = weighted_graph(
        {{0.1, 0.5}, {0.5, 0.4}, {0.5, 0.6}, {0.9, 0.5}},
        {{0, 1, 1.0}, {1, 3, 1.0}, {0, 2, 1.5}, {2, 3, 1.5}}, 1.0);
    PlanningProblem p{{0.1, 0.5}, {0.9, 0.5}, w};
    std::vector<Path> paths = k_shortest_paths(g, p, 5);
    REQUIRE(paths.size() == 2);
    CHECK(paths[0].cost == doctest::Approx(2.0));
    CHECK(paths[0].vertex_indices == std::vector<int>{0, 1, 3});
    CHECK(paths[1].cost == doctest::Approx(3.0));
    CHECK(paths[1].vertex_indices == std::vector<int>{0, 2, 3});
  }
  SUBCASE("L caps the list") {
    Graph g = build_rdisc_graph(halton_points(12, 2), 0.8);
    PlanningProblem p{{0.5, 1.0 / 3.0}, {0.75, 1.0 / 9.0}, w};
    CHECK(k_shortest_paths(g, p, 1).size() == 1);
    CHECK(k_shortest_paths(g, p, 3).size() == 3);
  }
  SUBCASE("infeasible problems yield an empty list") {
    Graph g = build_rdisc_graph({{0.1, 0.1}, {0.9, 0.9}}, 0.2);
    PlanningProblem p{{0.1, 0.1}, {0.9, 0.9}, w};
    CHECK(k_shortest_paths(g, p, 4).empty());
  }
}

TEST_CASE("randomized search matches exhaustive enumeration") {
  Rng rng(2024);
  int nonempty = 0;
  for (int t = 0; t < 40; ++t) {
    World w;
    if (t % 2 == 1) w = generate_world(100 + t, GapClass::Medium, 1);
    int n = 4 + static_cast<int>(rng.uniform_int(6));
    std::vector<Config> pts;
    for (int i = 0; i < n; ++i) pts.push_back({rng.uniform(), rng.uniform()});
    Graph g = build_rdisc_graph(pts, rng.uniform(0.4, 0.8));
    Config start, goal;
    do start = {rng.uniform(), rng.uniform()};
    while (!is_config_free(w, start));
    do goal = {rng.uniform(), rng.uniform()};
    while (!is_config_free(w, goal) || goal == start);
    PlanningProblem p{start, goal, w};
    std::vector<Path> all = brute::enumerate_paths(g, p);
    Path best = shortest_path(g, p);
    if (all.empty()) {
      CHECK_FALSE(best.feasible());
      continue;
    }
    ++nonempty;
    CHECK(same_path(best, all.front()));
    std::vector<Path> top = k_shortest_paths(g, p, 6);
    REQUIRE(top.size() == std::min<std::size_t>(6, all.size()));
    for (std::size_t i = 0; i < top.size(); ++i) CHECK(same_path(top[i], all[i]));
    // No duplicates, sorted, and simple.
    for (std::size_t i = 0; i + 1 < top.size(); ++i)
      CHECK(path_order_less(top[i].cost, top[i].vertex_indices, top[i + 1].cost,
                            top[i + 1].vertex_indices));
    for (const Path& path : top) {
      std::set<int> uniq(path.vertex_indices.begin(), path.vertex_indices.end());
      CHECK(uniq.size() == path.vertex_indices.size());
    }
  }
  CHECK(nonempty >= 20);  // the comparison actually exercised feasible cases
}
