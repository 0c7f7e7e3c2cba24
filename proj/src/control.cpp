#include "mrbot/control.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mrbot {

void SphereParams::validate() const {
  if (!(radius > 0.0)) throw std::invalid_argument("sphere radius must be > 0");
  if (!(magnetization > 0.0)) throw std::invalid_argument("sphere magnetization must be > 0");
  if (!(density > 0.0)) throw std::invalid_argument("sphere density must be > 0");
}

double SphereParams::volume() const {
  return 4.0 / 3.0 * std::numbers::pi * radius * radius * radius;
}

void VelocityPlan::validate() const {
  if (!(v0 > 0.0)) throw std::invalid_argument("plan v0 must be > 0");
  if (!(k0 > 0.0)) throw std::invalid_argument("plan k0 must be > 0");
  if (!(r0 > 0.0)) throw std::invalid_argument("plan r0 must be > 0");
  if (!(v_min >= 0.0)) throw std::invalid_argument("plan v_min must be >= 0");
}

double raw_velocity_setpoint(const VelocityPlan& plan, double curvature, double sphere_radius,
                             double corridor_radius) {
  return plan.v0 / (1.0 + curvature / plan.k0) + (sphere_radius - corridor_radius) / plan.r0;
}

double velocity_setpoint(const VelocityPlan& plan, double curvature, double sphere_radius,
                         double corridor_radius) {
  return std::max(plan.v_min,
                  raw_velocity_setpoint(plan, curvature, sphere_radius, corridor_radius));
}

Vec3 velocity_error(const Vec3& v_current, const Vec3& v_setpoint, const Vec3& p_current,
                    const Vec3& p_setpoint, double kr) {
  return v_current - v_setpoint + kr * (p_current - p_setpoint);
}

void PidGains::validate() const {
  if (!(kp >= 0.0)) throw std::invalid_argument("kp must be >= 0");
  if (!(ki >= 0.0)) throw std::invalid_argument("ki must be >= 0");
  if (!(kd >= 0.0)) throw std::invalid_argument("kd must be >= 0");
  if (!(kr >= 0.0)) throw std::invalid_argument("kr must be >= 0");
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
  if (!(integral_limit > 0.0)) throw std::invalid_argument("integral limit must be > 0");
}

PidTerms ControllerState::step(const Vec3& error) {
  if (!primed_) {
    previous_error_ = error;
    primed_ = true;
  }
  PidTerms out;
  out.pf = -gains_.kp * error;
  integral_ -= error * gains_.delta * gains_.ki;
  if (std::isfinite(gains_.integral_limit)) {
    integral_ = integral_.cwiseMax(-gains_.integral_limit).cwiseMin(gains_.integral_limit);
  }
  out.pi = integral_;
  const Vec3 error_dt = (error - previous_error_) / gains_.delta;
  out.pd = -gains_.kd * error_dt;
  previous_error_ = error;
  return out;
}

void ControllerState::reset() {
  integral_.setZero();
  previous_error_.setZero();
  primed_ = false;
}

GradientCommand gradient_command(const SphereParams& sphere, const Vec3& pf, const Vec3& pi,
                                 const Vec3& pd, const Vec3& ff, double g_max, double t) {
  GradientCommand cmd;
  cmd.t = t;
  cmd.g = (pf + pi + pd + ff) / sphere.moment();
  for (int axis = 0; axis < 3; ++axis) {
    if (std::abs(cmd.g[axis]) > g_max) {
      cmd.g[axis] = std::copysign(g_max, cmd.g[axis]);
      cmd.clamped = true;
    }
  }
  return cmd;
}

Vec3 magnetic_force(const SphereParams& sphere, const Vec3& g) {
  return sphere.magnetization * g * sphere.volume();
}

void ControllerConfig::validate() const {
  gains.validate();
  if (!(pid_force_scale > 0.0)) throw std::invalid_argument("pid force scale must be > 0");
  if (!(g_max > 0.0)) throw std::invalid_argument("g_max must be > 0");
}

TrajectoryController::TrajectoryController(SphereParams sphere, DragParams drag,
                                           ControllerConfig config)
    : sphere_(sphere), drag_(drag), config_(config) {
  sphere_.validate();
  drag_.validate();
  config_.validate();
  force_scale_ = config_.pid_force_scale * drag_.coefficient();
  PidGains gains = config_.gains;
  // The integral alone may not ask for more than the gradient ceiling.
  gains.integral_limit = config_.anti_windup
                             ? sphere_.moment() * config_.g_max / force_scale_
                             : std::numeric_limits<double>::infinity();
  state_ = ControllerState(gains);
}

ControlOutput TrajectoryController::update(const ControlInput& in) {
  ControlOutput out;
  out.error = velocity_error(in.velocity, in.setpoint_velocity, in.position,
                             in.setpoint_position, config_.gains.kr);
  out.terms = state_.step(out.error);
  out.pid_force = force_scale_ * (out.terms.pf + out.terms.pi + out.terms.pd);

  const double speed = in.blood_velocity.norm();
  const Vec3 flow_drag = speed > 0.0
                             ? Vec3(feedforward_force(drag_, speed) * (in.blood_velocity / speed))
                             : Vec3(Vec3::Zero());
  if (config_.feedforward) {
    out.feedforward = -flow_drag;
  }
  if (config_.setpoint_feedforward) {
    // Force that moves the sphere at the planned velocity through the flow, minus the part
    // already covered by the blood-drag term.
    out.motion_feedforward =
        -drag_force(drag_, in.blood_velocity, in.planned_velocity) + flow_drag;
  }
  out.command = gradient_command(sphere_, force_scale_ * out.terms.pf,
                                 force_scale_ * out.terms.pi, force_scale_ * out.terms.pd,
                                 out.feedforward + out.motion_feedforward, config_.g_max, in.t);
  return out;
}

}  // namespace mrbot
