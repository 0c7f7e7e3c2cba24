#pragma once

#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include "mrbot/config.hpp"
#include "mrbot/path.hpp"
#include "mrbot/sim.hpp"

namespace testing {

using mrbot::Vec3;

inline constexpr double kPi = std::numbers::pi;

inline std::vector<Vec3> line_points(int n, double length, const Vec3& dir = Vec3::UnitX()) {
  std::vector<Vec3> pts;
  for (int i = 0; i < n; ++i) pts.push_back(dir * (length * i / (n - 1)));
  return pts;
}

// Planar arc of radius r from angle a0 to a1, n nodes.
inline std::vector<Vec3> arc_points(double r, double a0, double a1, int n) {
  std::vector<Vec3> pts;
  for (int i = 0; i < n; ++i) {
    const double a = a0 + (a1 - a0) * i / (n - 1);
    pts.emplace_back(r * std::cos(a), r * std::sin(a), 0.0);
  }
  return pts;
}

// Helix x = R cos t, y = R sin t, z = c t with `per_quarter` nodes per quarter
// turn, so nodes land on the coordinate extrema.
inline std::vector<Vec3> helix_points(double R, double c, double turns, int per_quarter) {
  std::vector<Vec3> pts;
  const int n = int(std::lround(turns * 4 * per_quarter));
  for (int i = 0; i <= n; ++i) {
    const double t = (kPi / 2) * i / per_quarter;
    pts.emplace_back(R * std::cos(t), R * std::sin(t), c * t);
  }
  return pts;
}

inline std::shared_ptr<const mrbot::PathSpline> make_path(std::vector<Vec3> pts) {
  return std::make_shared<const mrbot::PathSpline>(
      mrbot::Centerline::from_points(std::move(pts)));
}

// Scenario over an arbitrary path with uniform vessel radius and defaults for
// everything else.
inline mrbot::Scenario make_scenario(std::shared_ptr<const mrbot::PathSpline> path,
                                     double vessel_radius = 0.002) {
  mrbot::RunConfig rc;
  std::vector<double> vessel(path->node_count(), vessel_radius);
  mrbot::Scenario sc{path,
                     mrbot::fit_corridor(path, vessel, rc.clearance_fraction),
                     rc.flow_profile(),
                     rc.drag,
                     rc.sphere,
                     rc.plan,
                     rc.controller_config(),
                     rc.limits};
  sc.flow.area = kPi * vessel_radius * vessel_radius;
  return sc;
}

inline bool rel_close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace testing
