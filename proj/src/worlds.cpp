#include "lego/worlds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lego/rng.hpp"

namespace lego {

double distance(const Config& a, const Config& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Config lerp(const Config& a, const Config& b, double t) {
  Config q(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) q[i] = a[i] + t * (b[i] - a[i]);
  return q;
}

bool segment_intersects_rect(double x1, double y1, double x2, double y2, const Rect& r) {
  // Liang-Barsky clip of the segment against the closed rectangle.
  double dx = x2 - x1, dy = y2 - y1;
  double t0 = 0.0, t1 = 1.0;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {x1 - r.min_x, r.max_x - x1, y1 - r.min_y, r.max_y - y1};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;
    } else {
      double t = q[i] / p[i];
      if (p[i] < 0.0) {
        if (t > t1) return false;
        if (t > t0) t0 = t;
      } else {
        if (t < t0) return false;
        if (t < t1) t1 = t;
      }
    }
  }
  return t0 <= t1;
}

double gap_width(GapClass gap) {
  switch (gap) {
    case GapClass::Small: return 0.04;
    case GapClass::Medium: return 0.08;
    case GapClass::Large: return 0.15;
  }
  throw std::invalid_argument("unknown gap class");
}

std::string gap_class_name(GapClass gap) {
  switch (gap) {
    case GapClass::Small: return "small";
    case GapClass::Medium: return "medium";
    case GapClass::Large: return "large";
  }
  throw std::invalid_argument("unknown gap class");
}

GapClass gap_class_from_name(const std::string& name) {
  if (name == "small") return GapClass::Small;
  if (name == "medium") return GapClass::Medium;
  if (name == "large") return GapClass::Large;
  throw std::invalid_argument("unknown gap class: " + name);
}

namespace {

struct Wall {
  bool vertical = true;
  double center = 0.5;   // position across the wall
  double gap_lo = 0.0;   // gap interval along the wall
  double gap_hi = 0.0;
};

constexpr double kGapClearance = 0.02;

bool intervals_disjoint(double a0, double a1, double b0, double b1) {
  return a1 < b0 || b1 < a0;
}

// Every gap must stay passable: a wall's body (with clearance) may not sit on
// a perpendicular wall's gap, and parallel walls keep their bodies apart.
bool wall_placement_ok(const std::vector<Wall>& walls, const Wall& w) {
  double half = kWallThickness / 2 + kGapClearance;
  for (const Wall& o : walls) {
    if (o.vertical == w.vertical) {
      if (std::abs(o.center - w.center) < kWallThickness + 2 * kGapClearance + 0.06)
        return false;
    } else {
      if (!intervals_disjoint(w.center - half, w.center + half, o.gap_lo, o.gap_hi))
        return false;
      if (!intervals_disjoint(o.center - half, o.center + half, w.gap_lo, w.gap_hi))
        return false;
    }
  }
  return true;
}

void append_wall_rects(std::vector<Rect>& rects, const Wall& w) {
  double half = kWallThickness / 2;
  if (w.vertical) {
    rects.push_back({w.center - half, 0.0, w.center + half, w.gap_lo});
    rects.push_back({w.center - half, w.gap_hi, w.center + half, 1.0});
  } else {
    rects.push_back({0.0, w.center - half, w.gap_lo, w.center + half});
    rects.push_back({w.gap_hi, w.center - half, 1.0, w.center + half});
  }
}

}  // namespace

World generate_world(std::uint64_t seed, GapClass gap, int n_walls, const Kinematics& kin) {
  if (n_walls < 1) throw std::invalid_argument("generate_world: n_walls must be >= 1");
  double gw = gap_width(gap);
  Rng rng(Rng::derive(seed, 0x77a11));
  std::vector<Wall> walls;
  for (int i = 0; i < n_walls; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < 500 && !placed; ++attempt) {
      Wall w;
      w.vertical = (i % 2 == 0);  // alternate orientations, vertical first
      // The whole slab, not just its centerline, stays inside the band.
      w.center = rng.uniform(kObstacleBandLo + kWallThickness / 2,
                             kObstacleBandHi - kWallThickness / 2);
      w.gap_lo = rng.uniform(0.06, 0.94 - gw);
      w.gap_hi = w.gap_lo + gw;
      if (wall_placement_ok(walls, w)) {
        walls.push_back(w);
        placed = true;
      }
    }
    if (!placed) throw std::runtime_error("generate_world: could not place walls");
  }
  World w;
  w.kinematics = kin;
  w.dim = kin.config_dim();
  w.seed = seed;
  for (const Wall& wall : walls) append_wall_rects(w.obstacles, wall);
  return w;
}

World generate_obstacle_field(std::uint64_t seed, int n_squares, double square_size,
                              const Kinematics& kin) {
  if (n_squares < 0 || square_size <= 0 || square_size > kObstacleBandHi - kObstacleBandLo)
    throw std::invalid_argument("generate_obstacle_field: bad square count or size");
  Rng rng(Rng::derive(seed, 0xf1e1d));
  World w;
  w.kinematics = kin;
  w.dim = kin.config_dim();
  w.seed = seed;
  for (int i = 0; i < n_squares; ++i) {
    double x = rng.uniform(kObstacleBandLo, kObstacleBandHi - square_size);
    double y = rng.uniform(kObstacleBandLo, kObstacleBandHi - square_size);
    w.obstacles.push_back({x, y, x + square_size, y + square_size});
  }
  return w;
}

World corrupt_world(const World& w, std::uint64_t seed, int n_squares, double square_size) {
  if (n_squares < 0 || (n_squares > 0 && square_size <= 0))
    throw std::invalid_argument("corrupt_world: bad square count or size");
  World out = w;
  Rng rng(Rng::derive(seed, 0xc0a2b));
  for (int i = 0; i < n_squares; ++i) {
    double x = rng.uniform(kObstacleBandLo, kObstacleBandHi - square_size);
    double y = rng.uniform(kObstacleBandLo, kObstacleBandHi - square_size);
    out.obstacles.push_back({x, y, x + square_size, y + square_size});
  }
  return out;
}

bool is_config_free(const World& w, const Config& q) {
  if (static_cast<int>(q.size()) != w.dim)
    throw std::invalid_argument("is_config_free: config dimension mismatch");
  if (w.kinematics.type == KinematicsType::Point2D) {
    for (const Rect& r : w.obstacles)
      if (r.contains(q[0], q[1])) return false;
    return true;
  }
  auto pts = snake_forward_kinematics(w, q);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    for (const Rect& r : w.obstacles)
      if (segment_intersects_rect(pts[i][0], pts[i][1], pts[i + 1][0], pts[i + 1][1], r))
        return false;
  return true;
}

bool is_edge_free(const World& w, const Config& a, const Config& b, double step) {
  if (step <= 0) throw std::invalid_argument("is_edge_free: step must be positive");
  double d = distance(a, b);
  int segments = std::max(1, static_cast<int>(std::ceil(d / step)));
  for (int i = 0; i <= segments; ++i) {
    if (!is_config_free(w, lerp(a, b, static_cast<double>(i) / segments))) return false;
  }
  return true;
}

std::vector<std::array<double, 2>> snake_forward_kinematics(const World& w, const Config& q) {
  if (w.kinematics.type != KinematicsType::NLinkSnake)
    throw std::invalid_argument("snake_forward_kinematics: world is not a snake world");
  int n = w.kinematics.n_links;
  if (static_cast<int>(q.size()) != n + 2)
    throw std::invalid_argument("snake_forward_kinematics: config dimension mismatch");
  std::vector<std::array<double, 2>> pts;
  pts.reserve(n + 1);
  double x = q[0], y = q[1];
  pts.push_back({x, y});
  double theta = 0.0;
  constexpr double kPi = 3.14159265358979323846;
  for (int i = 0; i < n; ++i) {
    theta += (q[2 + i] * 2.0 - 1.0) * kPi;
    x += w.kinematics.link_length * std::cos(theta);
    y += w.kinematics.link_length * std::sin(theta);
    pts.push_back({x, y});
  }
  return pts;
}

FeatureVector extract_features(const PlanningProblem& p, int grid_res) {
  if (grid_res < 1) throw std::invalid_argument("extract_features: grid_res must be >= 1");
  FeatureVector f;
  f.reserve(2 * p.world.dim + grid_res * grid_res);
  f.insert(f.end(), p.start.begin(), p.start.end());
  f.insert(f.end(), p.goal.begin(), p.goal.end());
  for (int i = 0; i < grid_res; ++i) {
    for (int j = 0; j < grid_res; ++j) {
      double cx = (i + 0.5) / grid_res;
      double cy = (j + 0.5) / grid_res;
      bool occupied = false;
      for (const Rect& r : p.world.obstacles) {
        if (r.contains(cx, cy)) {
          occupied = true;
          break;
        }
      }
      f.push_back(occupied ? 1.0 : 0.0);
    }
  }
  return f;
}

}  // namespace lego
