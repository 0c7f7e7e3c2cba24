#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mrbot/control.hpp"
#include "mrbot/types.hpp"
#include "mrbot/vfix.hpp"

namespace mrbot {

// State sampled every Tp, with the corridor check taken at that instant.
struct SimSample {
  double t = 0.0;
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  double s = 0.0;
  VfCheck check;
};

// One controller update (every gradient interval).
struct ControlRecord {
  double t = 0.0;
  double s_target = 0.0;
  Vec3 setpoint_position = Vec3::Zero();
  Vec3 setpoint_velocity = Vec3::Zero();
  Vec3 error = Vec3::Zero();
  PidTerms terms;
  Vec3 pid_force = Vec3::Zero();
  Vec3 feedforward = Vec3::Zero();
  Vec3 motion_feedforward = Vec3::Zero();
  double compute_seconds = 0.0;
};

enum class StopReason { path_end, duration, violation };
std::string_view to_string(StopReason reason);

struct SimLog {
  std::vector<SimSample> samples;
  std::vector<GradientCommand> commands;
  std::vector<ControlRecord> control;
  // Largest |p - path(s*)| seen at any integrator step.
  double max_radial_error = 0.0;
  StopReason stop = StopReason::duration;
  double end_time = 0.0;
  bool violated = false;

  double mean_compute_seconds() const;
};

}  // namespace mrbot
