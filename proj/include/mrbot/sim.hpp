#pragma once

#include <memory>
#include <string_view>

#include "mrbot/control.hpp"
#include "mrbot/hemo.hpp"
#include "mrbot/path.hpp"
#include "mrbot/safety.hpp"
#include "mrbot/sim_log.hpp"
#include "mrbot/vfix.hpp"

namespace mrbot {

enum class ViolationPolicy { abort, record_and_continue };
ViolationPolicy parse_violation_policy(std::string_view name);
std::string_view to_string(ViolationPolicy policy);

struct SimConfig {
  double dt_physics = 1e-4;               // s
  double gradient_update_interval = 0.1;  // s
  double tp = 0.1;                        // position sampling interval, s
  double duration = 120.0;                // s
  double initial_s = 0.0;                 // m along the path
  double lateral_offset = 0.0;            // m off the centerline at start
  double end_tolerance = 1e-4;            // stop once s* >= length - this
  bool start_at_rest = false;             // else entrained in the flow
  bool controller_enabled = true;
  bool rate_limit = false;                // cap each update to the slew bound
  ViolationPolicy policy = ViolationPolicy::abort;

  void validate() const;
};

// Everything a run needs. All parts refer to the same path.
struct Scenario {
  std::shared_ptr<const PathSpline> path;
  VirtualFixture fixture;
  FlowProfile flow;
  DragParams drag;
  SphereParams sphere;
  VelocityPlan plan;
  ControllerConfig controller;
  SafetyLimits limits;
};

struct SimState {
  double t = 0.0;
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  double s = 0.0;
  GradientCommand last;
};

// Vessel cross-section at s: from centerline radii when present, else the
// flow's reference area.
double vessel_area(const Scenario& sc, double s);

// Blood velocity vector at pathDistance s and time t. Constant volumetric
// flow through a varying cross-section, directed along the path tangent.
Vec3 blood_velocity_at(const Scenario& sc, double s, double t);

// Semi-implicit Euler: a = (F_mag + F_drag) / m; v += a dt; p += v dt.
// Gravity, buoyancy and wall friction are left out. Throws NumericalError on
// non-finite forces or state. Does not touch `s`.
SimState step_dynamics(const SimState& state, const Vec3& magnetic_force,
                       const Vec3& blood_velocity, const DragParams& drag,
                       const SphereParams& sphere, double dt);

struct Setpoint {
  double speed_here = 0.0;  // V(s*)
  double s_target = 0.0;
  double speed = 0.0;       // V(s_target), zero at the path end
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
};

// s_target = s* + V(s*) Tp clamped to the path; P_s = path(s_target);
// V_s = V(s_target) * tangent(s_target), capped at (length - s*) / Tp so the
// setpoint speed falls to zero at the path end.
Setpoint setpoint_advance(double s, const VirtualFixture& vf, const VelocityPlan& plan,
                          double sphere_radius, double tp);

// Closed-loop run. The integrator ticks at dt_physics; the state is sampled
// and checked against the corridor every Tp; the controller emits a new
// gradient every gradient_update_interval from the latest sample and the
// gradient is held in between.
SimLog run(const SimConfig& config, const Scenario& scenario);

}  // namespace mrbot
