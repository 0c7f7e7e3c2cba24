#include "mrbot/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mrbot/errors.hpp"

namespace mrbot {

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::path_end:
      return "path_end";
    case StopReason::duration:
      return "duration";
    case StopReason::violation:
      return "violation";
  }
  return "?";
}

double SimLog::mean_compute_seconds() const {
  if (control.empty()) {
    return 0.0;
  }
  double sum = 0.0;
  for (const auto& c : control) {
    sum += c.compute_seconds;
  }
  return sum / double(control.size());
}

ViolationPolicy parse_violation_policy(std::string_view name) {
  if (name == "abort") return ViolationPolicy::abort;
  if (name == "record-and-continue") return ViolationPolicy::record_and_continue;
  throw std::invalid_argument("unknown violation policy '" + std::string(name) +
                              "' (expected abort or record-and-continue)");
}

std::string_view to_string(ViolationPolicy policy) {
  return policy == ViolationPolicy::abort ? "abort" : "record-and-continue";
}

namespace {

bool is_multiple(double interval, double dt) {
  const double ratio = interval / dt;
  return ratio >= 1.0 - 1e-9 && std::abs(ratio - std::round(ratio)) < 1e-6;
}

long ticks(double interval, double dt) { return std::lround(interval / dt); }

bool finite(const Vec3& v) { return v.allFinite(); }

}  // namespace

void SimConfig::validate() const {
  if (!(dt_physics > 0.0)) throw std::invalid_argument("dt_physics must be > 0");
  if (!(gradient_update_interval > 0.0))
    throw std::invalid_argument("gradient update interval must be > 0");
  if (!(tp >= dt_physics)) throw std::invalid_argument("tp must be >= dt_physics");
  if (!(duration >= tp)) throw std::invalid_argument("duration must be >= tp");
  if (!is_multiple(tp, dt_physics))
    throw std::invalid_argument("tp must be a whole multiple of dt_physics");
  if (!is_multiple(gradient_update_interval, dt_physics))
    throw std::invalid_argument("gradient update interval must be a whole multiple of dt_physics");
  if (!(end_tolerance >= 0.0)) throw std::invalid_argument("end tolerance must be >= 0");
}

double vessel_area(const Scenario& sc, double s) {
  const Centerline& c = sc.path->centerline();
  if (!c.has_radii()) {
    return sc.flow.area;
  }
  const auto nodes = sc.path->nodes();
  s = std::clamp(s, nodes.front(), nodes.back());
  auto it = std::upper_bound(nodes.begin(), nodes.end(), s);
  std::size_t i = it == nodes.begin() ? 0 : std::size_t(it - nodes.begin()) - 1;
  i = std::min(i, nodes.size() - 2);
  const double w = (s - nodes[i]) / (nodes[i + 1] - nodes[i]);
  const double r = (1.0 - w) * c.radii[i] + w * c.radii[i + 1];
  return std::numbers::pi * r * r;
}

Vec3 blood_velocity_at(const Scenario& sc, double s, double t) {
  return blood_velocity(sc.flow, t, vessel_area(sc, s)) * sc.path->unit_tangent(s);
}

SimState step_dynamics(const SimState& state, const Vec3& magnetic_force,
                       const Vec3& blood_velocity, const DragParams& drag,
                       const SphereParams& sphere, double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("dt must be > 0");
  }
  const Vec3 force = magnetic_force + drag_force(drag, blood_velocity, state.velocity);
  if (!finite(force)) {
    throw NumericalError("non-finite force at t = " + std::to_string(state.t));
  }
  SimState next = state;
  const Vec3 accel = force / sphere.mass();
  next.velocity = state.velocity + accel * dt;
  next.position = state.position + next.velocity * dt;
  next.t = state.t + dt;
  if (!finite(next.velocity) || !finite(next.position)) {
    throw NumericalError("non-finite state at t = " + std::to_string(next.t));
  }
  return next;
}

Setpoint setpoint_advance(double s, const VirtualFixture& vf, const VelocityPlan& plan,
                          double sphere_radius, double tp) {
  const PathSpline& path = vf.path();
  Setpoint sp;
  sp.speed_here = velocity_setpoint(plan, curvature(path, s), sphere_radius, vf.radius_at(s));
  sp.s_target = std::min(path.end(), s + sp.speed_here * tp);
  sp.position = path.eval(sp.s_target);
  if (s >= path.end()) {
    return sp;
  }
  sp.speed = velocity_setpoint(plan, curvature(path, sp.s_target), sphere_radius,
                               vf.radius_at(sp.s_target));
  // Arrive at the end within one sampling interval instead of overshooting.
  sp.speed = std::min(sp.speed, (path.end() - s) / tp);
  sp.velocity = sp.speed * path.unit_tangent(sp.s_target);
  return sp;
}

SimLog run(const SimConfig& config, const Scenario& sc) {
  config.validate();
  sc.limits.validate();
  sc.flow.validate();
  const PathSpline& path = *sc.path;
  if (&sc.fixture.path() != &path) {
    throw std::invalid_argument("fixture and scenario refer to different paths");
  }
  if (!path.contains(config.initial_s)) {
    throw std::invalid_argument("initial pathDistance outside the path");
  }

  const double dt = config.dt_physics;
  const long tp_ticks = ticks(config.tp, dt);
  const long ctrl_ticks = ticks(config.gradient_update_interval, dt);
  const long max_ticks = std::lround(std::floor(config.duration / dt + 1e-9));
  const double rs = sc.sphere.radius;
  const double step_cap = max_gradient_step(sc.limits);

  TrajectoryController controller(sc.sphere, sc.drag, sc.controller);

  SimState state;
  state.s = config.initial_s;
  state.position = path.eval(state.s);
  if (config.lateral_offset != 0.0) {
    state.position += config.lateral_offset * path.unit_tangent(state.s).unitOrthogonal();
    state.s = nearest_on_path(path, state.position, state.s);
  }
  if (!config.start_at_rest) {
    state.velocity = blood_velocity_at(sc, state.s, 0.0);
  }

  SimLog log;
  log.samples.reserve(std::size_t(max_ticks / tp_ticks) + 2);
  log.commands.reserve(std::size_t(max_ticks / ctrl_ticks) + 2);
  log.control.reserve(log.commands.capacity());
  SimSample latest;
  bool aim_valid = false;
  double aim_t = 0.0;
  double aim_s = 0.0;
  Vec3 aim = Vec3::Zero();

  for (long tick = 0;; ++tick) {
    const double t = double(tick) * dt;
    state.t = t;
    const bool sample_now = tick % tp_ticks == 0;
    const bool control_now = tick % ctrl_ticks == 0;
    const auto started = std::chrono::steady_clock::now();

    if (sample_now) {
      latest.t = t;
      latest.position = state.position;
      latest.velocity = state.velocity;
      latest.s = state.s;
      latest.check = check(sc.fixture, state.position, rs, state.s);
      log.samples.push_back(latest);
      if (latest.check.violated) {
        log.violated = true;
        if (config.policy == ViolationPolicy::abort) {
          log.stop = StopReason::violation;
          log.end_time = t;
          break;
        }
      }
    }

    if (control_now) {
      ControlRecord rec;
      rec.t = t;
      const Setpoint sp = setpoint_advance(latest.s, sc.fixture, sc.plan, rs, config.tp);
      rec.s_target = sp.s_target;
      rec.setpoint_position = sp.position;
      rec.setpoint_velocity = sp.velocity;
      GradientCommand cmd;
      cmd.t = t;
      if (config.controller_enabled) {
        ControlInput in;
        in.t = t;
        in.position = latest.position;
        in.velocity = latest.velocity;
        in.setpoint_position = sp.position;
        in.setpoint_velocity = sp.velocity;
        // Feedforward over the coming hold: move from where the sphere is
        // believed to be to the path point it should reach at the end of the
        // hold, and cancel the flow halfway along. Without a sample since the
        // last update, the sphere is assumed to have reached the previous aim.
        const double hold = config.gradient_update_interval;
        double s0 = aim_s;
        Vec3 p0 = aim;
        if (!aim_valid || latest.t > aim_t) {
          const double age = t - latest.t;
          s0 = std::min(path.end(), latest.s + sp.speed_here * age);
          p0 = path.eval(s0) + (latest.position - path.eval(latest.s));
        }
        const double s1 = std::min(path.end(), s0 + sp.speed_here * hold);
        in.blood_velocity = blood_velocity_at(sc, 0.5 * (s0 + s1), t + 0.5 * hold);
        in.planned_velocity = (path.eval(s1) - p0) / hold;
        aim_s = s1;
        aim = path.eval(s1);
        aim_t = t;
        aim_valid = true;
        const ControlOutput out = controller.update(in);
        cmd = out.command;
        rec.error = out.error;
        rec.terms = out.terms;
        rec.pid_force = out.pid_force;
        rec.feedforward = out.feedforward;
        rec.motion_feedforward = out.motion_feedforward;
      }
      if (config.rate_limit && !log.commands.empty()) {
        const Vec3& prev = log.commands.back().g;
        cmd.g = cmd.g.cwiseMax((prev.array() - step_cap).matrix())
                    .cwiseMin((prev.array() + step_cap).matrix());
      }
      state.last = cmd;
      const auto finished = std::chrono::steady_clock::now();
      rec.compute_seconds = std::chrono::duration<double>(finished - started).count();
      log.commands.push_back(cmd);
      log.control.push_back(rec);
    }

    if (state.s >= path.end() - config.end_tolerance) {
      log.stop = StopReason::path_end;
      log.end_time = t;
      break;
    }
    if (tick >= max_ticks) {
      log.stop = StopReason::duration;
      log.end_time = t;
      break;
    }

    const Vec3 f_mag = magnetic_force(sc.sphere, state.last.g);
    const Vec3 v_blood = blood_velocity_at(sc, state.s, t);
    state = step_dynamics(state, f_mag, v_blood, sc.drag, sc.sphere, dt);
    state.s = nearest_on_path(path, state.position, state.s);
    log.max_radial_error =
        std::max(log.max_radial_error, (state.position - path.eval(state.s)).norm());
  }
  return log;
}

}  // namespace mrbot
