#pragma once

#include <limits>

#include "mrbot/hemo.hpp"
#include "mrbot/types.hpp"

namespace mrbot {

// Homogeneous magnetized sphere.
struct SphereParams {
  double radius = 3e-4;            // m
  double magnetization = 1.9496e6; // A/m
  double density = 8120.0;         // kg/m^3, permendur

  void validate() const;
  double volume() const;                        // 4/3 pi r^3
  double moment() const { return magnetization * volume(); }  // A m^2
  double mass() const { return density * volume(); }
};

// Curvature-adaptive speed profile
//   V = V0 / (1 + K/K0) + (Rs - R_GC) / R0, floored at v_min.
struct VelocityPlan {
  double v0 = 0.05;   // m/s
  double k0 = 50.0;   // 1/m
  double r0 = 0.1;    // m
  double v_min = 0.0; // m/s

  void validate() const;
};

// Unfloored value of the speed profile; negative when the radius term wins.
double raw_velocity_setpoint(const VelocityPlan& plan, double curvature, double sphere_radius,
                             double corridor_radius);
double velocity_setpoint(const VelocityPlan& plan, double curvature, double sphere_radius,
                         double corridor_radius);

// Error_v = V_c - V_s + K_r (P_c - P_s).
Vec3 velocity_error(const Vec3& v_current, const Vec3& v_setpoint, const Vec3& p_current,
                    const Vec3& p_setpoint, double kr);

struct PidGains {
  double kp = 2.0;
  double ki = 1.0;
  double kd = 0.01;
  double kr = 0.7;
  double delta = 0.05;  // "base velocity" divisor
  // Per-axis clamp on the integral accumulator; infinite disables it.
  double integral_limit = std::numeric_limits<double>::infinity();

  void validate() const;
};

struct PidTerms {
  Vec3 pf = Vec3::Zero();
  Vec3 pi = Vec3::Zero();
  Vec3 pd = Vec3::Zero();
};

// Integral and previous-error memory of the regulator. Owned by one
// control loop; `step` mutates it.
class ControllerState {
 public:
  ControllerState() = default;
  explicit ControllerState(PidGains gains) : gains_(gains) {}

  // PF = -kp e
  // PI = PI - e delta ki          (then clamped to +/- integral_limit)
  // PD = -kd (e - e_prev) / delta
  // The first call primes e_prev with e, so the first PD is zero.
  PidTerms step(const Vec3& error);
  void reset();

  const PidGains& gains() const { return gains_; }
  const Vec3& integral() const { return integral_; }
  const Vec3& previous_error() const { return previous_error_; }
  bool primed() const { return primed_; }

 private:
  PidGains gains_;
  Vec3 integral_ = Vec3::Zero();
  Vec3 previous_error_ = Vec3::Zero();
  bool primed_ = false;
};

struct GradientCommand {
  double t = 0.0;
  Vec3 g = Vec3::Zero();  // T/m
  bool clamped = false;
};

// G = (PF + PI + PD + FF) / Moment_s, then clamped per axis to +/- g_max.
GradientCommand gradient_command(const SphereParams& sphere, const Vec3& pf, const Vec3& pi,
                                 const Vec3& pd, const Vec3& ff, double g_max, double t = 0.0);

// F = M G Vol.
Vec3 magnetic_force(const SphereParams& sphere, const Vec3& g);

// Everything the trajectory controller needs besides its own state.
struct ControllerConfig {
  PidGains gains;
  // Newtons per unit of regulator output, as a multiple of the sphere's
  // linear drag coefficient 1/2 Cd p Re.
  double pid_force_scale = 0.05;
  double g_max = 0.04;  // T/m
  bool anti_windup = true;
  // Cancel blood drag: -1/2 Cd p Re V_blood along the flow.
  bool feedforward = true;
  // Also supply the drag of moving at the setpoint velocity, so the
  // regulator only trims residual error.
  bool setpoint_feedforward = true;

  void validate() const;
};

struct ControlInput {
  double t = 0.0;
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  Vec3 setpoint_position = Vec3::Zero();
  Vec3 setpoint_velocity = Vec3::Zero();
  // Blood velocity the feedforward cancels over the coming hold.
  Vec3 blood_velocity = Vec3::Zero();
  // Sphere velocity the motion feedforward should produce over the hold.
  Vec3 planned_velocity = Vec3::Zero();
};

struct ControlOutput {
  GradientCommand command;
  Vec3 error = Vec3::Zero();
  PidTerms terms;           // regulator units
  Vec3 pid_force = Vec3::Zero();   // N
  Vec3 feedforward = Vec3::Zero(); // N, blood-drag compensation
  Vec3 motion_feedforward = Vec3::Zero();  // N, drag of moving at the planned velocity
};

// PID + drag feedforward producing one gradient command per update.
class TrajectoryController {
 public:
  TrajectoryController(SphereParams sphere, DragParams drag, ControllerConfig config);

  ControlOutput update(const ControlInput& in);

  // Newtons per unit regulator output.
  double force_scale() const { return force_scale_; }
  const ControllerState& state() const { return state_; }
  const ControllerConfig& config() const { return config_; }

 private:
  SphereParams sphere_;
  DragParams drag_;
  ControllerConfig config_;
  double force_scale_;
  ControllerState state_;
};

}  // namespace mrbot
