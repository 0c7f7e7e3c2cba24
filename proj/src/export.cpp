#include "mrbot/export.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace mrbot {

std::string format_number(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

void write_trajectory_csv(std::ostream& out, const SimLog& log) {
  out << "t,x,y,z,vx,vy,vz,s,margin\n";
  for (const auto& s : log.samples) {
    out << format_number(s.t);
    for (int k = 0; k < 3; ++k) out << ',' << format_number(s.position[k]);
    for (int k = 0; k < 3; ++k) out << ',' << format_number(s.velocity[k]);
    out << ',' << format_number(s.s) << ',' << format_number(s.check.margin) << '\n';
  }
}

void write_gradients_csv(std::ostream& out, const SimLog& log) {
  out << "t,gx,gy,gz,clamped\n";
  for (const auto& c : log.commands) {
    out << format_number(c.t);
    for (int k = 0; k < 3; ++k) out << ',' << format_number(c.g[k]);
    out << ',' << (c.clamped ? 1 : 0) << '\n';
  }
}

void write_flow_csv(std::ostream& out, const FlowProfile& flow, double periods, double rate_hz) {
  const double span = periods * (flow.pulsatile() ? flow.period() : 1.0);
  const long n = std::lround(span * rate_hz);
  out << "t,v\n";
  for (long i = 0; i <= n; ++i) {
    const double t = double(i) / rate_hz;
    out << format_number(t) << ',' << format_number(blood_velocity(flow, t)) << '\n';
  }
}

namespace {

nlohmann::json vec(const Vec3& v) { return nlohmann::json::array({v.x(), v.y(), v.z()}); }

}  // namespace

nlohmann::json to_json(const FeasibilityReport& r) {
  return {
      {"max_abs_gradient_t_m", vec(r.max_abs_gradient)},
      {"max_slew", vec(r.max_slew)},
      {"clamped_commands", r.clamped_commands},
      {"vf_violations", r.vf_violations},
      {"worst_vf_margin_m", r.worst_vf_margin},
      {"max_tracking_error_m", r.max_tracking_error},
      {"pass", r.pass},
  };
}

nlohmann::json config_json(const RunConfig& c) {
  nlohmann::json j;
  j["centerline"] = c.centerline.string();
  j["output_dir"] = c.output_dir.string();
  j["flow"] = {{"kind", std::string(to_string(c.flow_kind))},
               {"q0_ml_s", c.q0_ml_s},
               {"alpha", c.alpha},
               {"hr_bpm", c.flow_profile().heart_rate_bpm}};
  if (c.flow_vessel_radius) j["flow"]["vessel_radius_m"] = *c.flow_vessel_radius;
  j["corridor"] = {{"vessel_radius_m", c.vessel_radius},
                   {"clearance_fraction", c.clearance_fraction}};
  j["sphere"] = {{"radius_m", c.sphere.radius},
                 {"magnetization_a_m", c.sphere.magnetization},
                 {"density_kg_m3", c.sphere.density}};
  j["drag"] = {{"cd", c.drag.cd},
               {"blood_density_kg_m3", c.drag.density},
               {"law", c.drag.law == DragLaw::linear ? "linear" : "quadratic"}};
  const auto& g = c.controller.gains;
  j["controller"] = {{"kp", g.kp},
                     {"ki", g.ki},
                     {"kd", g.kd},
                     {"kr", g.kr},
                     {"delta_m_s", c.delta.value_or(c.plan.v0)},
                     {"v0_m_s", c.plan.v0},
                     {"k0_per_m", c.plan.k0},
                     {"r0_m", c.plan.r0},
                     {"v_min_m_s", c.plan.v_min},
                     {"pid_force_scale", c.controller.pid_force_scale},
                     {"anti_windup", c.controller.anti_windup},
                     {"feedforward", c.controller.feedforward},
                     {"setpoint_feedforward", c.controller.setpoint_feedforward}};
  j["safety"] = {{"slew_limit", c.limits.s_max},
                 {"g_max_t_m", c.limits.g_max},
                 {"rise_time_s", c.limits.rise_time},
                 {"r_iso_m", c.limits.r_iso}};
  const auto& s = c.sim;
  j["sim"] = {{"dt_physics_s", s.dt_physics},
              {"gradient_update_s", s.gradient_update_interval},
              {"tp_ms", c.tp_ms},
              {"duration_s", s.duration},
              {"initial_s_m", s.initial_s},
              {"lateral_offset_m", s.lateral_offset},
              {"end_tolerance_m", s.end_tolerance},
              {"start_at_rest", s.start_at_rest},
              {"controller", s.controller_enabled},
              {"rate_limit", s.rate_limit},
              {"violation_policy", std::string(to_string(s.policy))}};
  return j;
}

nlohmann::json report_json(const FeasibilityReport& report, const SimLog& log,
                           const RunConfig& config) {
  nlohmann::json j = to_json(report);
  j["slew_compliant"] = report.max_slew.maxCoeff() <= config.limits.s_max;
  j["stop_reason"] = std::string(to_string(log.stop));
  j["end_time_s"] = log.end_time;
  j["samples"] = log.samples.size();
  j["gradient_updates"] = log.commands.size();
  j["mean_control_step_ms"] = log.mean_compute_seconds() * 1e3;
  j["config"] = config_json(config);
  return j;
}

}  // namespace mrbot
