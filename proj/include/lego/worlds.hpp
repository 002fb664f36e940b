#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace lego {

using Config = std::vector<double>;

double distance(const Config& a, const Config& b);
Config lerp(const Config& a, const Config& b, double t);

// Axis-aligned rectangle in workspace coordinates. Closed: boundary points
// count as inside.
struct Rect {
  double min_x = 0, min_y = 0, max_x = 0, max_y = 0;

  bool contains(double x, double y) const {
    return x >= min_x && x <= max_x && y >= min_y && y <= max_y;
  }
};

bool segment_intersects_rect(double x1, double y1, double x2, double y2, const Rect& r);

enum class KinematicsType { Point2D, NLinkSnake };

struct Kinematics {
  KinematicsType type = KinematicsType::Point2D;
  int n_links = 0;          // NLinkSnake only
  double link_length = 0.0;  // NLinkSnake only

  int config_dim() const { return type == KinematicsType::Point2D ? 2 : n_links + 2; }
};

enum class GapClass { Small, Medium, Large };

double gap_width(GapClass gap);
std::string gap_class_name(GapClass gap);
GapClass gap_class_from_name(const std::string& name);

struct World {
  int dim = 2;
  Kinematics kinematics;
  std::vector<Rect> obstacles;
  std::uint64_t seed = 0;
};

inline constexpr double kEdgeCheckStep = 0.005;
inline constexpr double kWallThickness = 0.26;
// Central band where generated walls and corruption squares live; keeps the
// start/goal bands near x=0 and x=1 clear.
inline constexpr double kObstacleBandLo = 0.18;
inline constexpr double kObstacleBandHi = 0.82;

// Unit-square world with n_walls full-span rectilinear walls, each split by
// one gap of the class width at a seeded position. Orientations alternate
// starting vertical; gap/wall placement is rejection-sampled so every gap
// stays passable (free space remains one connected corridor system).
World generate_world(std::uint64_t seed, GapClass gap, int n_walls, const Kinematics& kin = {});

// Scattered-square clutter field; density is controlled by count and size.
World generate_obstacle_field(std::uint64_t seed, int n_squares, double square_size,
                              const Kinematics& kin = {});

// Adds n_squares seeded axis-aligned squares inside the central band. The
// input world is untouched; n_squares = 0 returns an identical copy.
World corrupt_world(const World& w, std::uint64_t seed, int n_squares, double square_size);

bool is_config_free(const World& w, const Config& q);
bool is_edge_free(const World& w, const Config& a, const Config& b, double step = kEdgeCheckStep);

// Chain of n_links+1 joint positions starting at base (q[0], q[1]); joint
// angles are relative, q[2+k] in [0,1] mapping to [-pi, pi].
std::vector<std::array<double, 2>> snake_forward_kinematics(const World& w, const Config& q);

struct PlanningProblem {
  Config start;
  Config goal;
  World world;
};

using FeatureVector = std::vector<double>;

// [start coords, goal coords, row-major occupancy grid of cell centers];
// length 2*dim + grid_res^2. Grid cell (i, j) covers x in [i/g, (i+1)/g),
// y in [j/g, (j+1)/g) and is 1.0 iff its center lies inside an obstacle.
FeatureVector extract_features(const PlanningProblem& p, int grid_res = 10);

}  // namespace lego
