#pragma once

#include <string>
#include <vector>

#include "mrbot/sim.hpp"

namespace mrbot {

struct ProfilePoint {
  double s = 0.0;
  double curvature = 0.0;
  double corridor_radius = 0.0;
  double speed = 0.0;  // floored setpoint
};

// Geometry-only feasibility of a scenario; no dynamics are run.
struct PathAssessment {
  double length = 0.0;
  double max_curvature = 0.0;
  double s_max_curvature = 0.0;
  double min_corridor_radius = 0.0;
  double s_min_corridor = 0.0;
  bool sphere_fits = true;
  double min_speed = 0.0;
  double max_speed = 0.0;
  bool speed_floor_engaged = false;
  double s_speed_floor = 0.0;
  double peak_blood_velocity = 0.0;        // m/s, narrowest section
  double required_gradient = 0.0;          // FF_peak / Moment_s, T/m
  bool gradient_within_limit = true;
  bool pass = false;
  std::vector<std::string> warnings;
  std::vector<std::string> failures;
  std::vector<ProfilePoint> profile;
};

// Samples every spline piece `samples_per_piece` times (plus the end node).
PathAssessment assess_path(const Scenario& scenario, int samples_per_piece = 8);

}  // namespace mrbot
