#include "mrbot/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "mrbot/errors.hpp"

namespace mrbot {

namespace {

// Reads keys from one mapping and rejects anything it was not asked about.
class Section {
 public:
  Section(const YAML::Node& root, std::string name) : name_(std::move(name)) {
    node_ = name_.empty() ? root : root[name_];
    if (node_ && !node_.IsMap()) {
      throw ConfigError(name_, "expected a mapping");
    }
  }

  std::string key(const std::string& k) const { return name_.empty() ? k : name_ + "." + k; }

  bool has(const std::string& k) {
    seen_.insert(k);
    return node_ && node_[k];
  }

  double number(const std::string& k, double fallback) {
    return has(k) ? as_number(k) : fallback;
  }

  std::optional<double> optional_number(const std::string& k) {
    if (!has(k)) return std::nullopt;
    return as_number(k);
  }

  bool boolean(const std::string& k, bool fallback) {
    if (!has(k)) return fallback;
    try {
      return node_[k].as<bool>();
    } catch (const YAML::Exception&) {
      throw ConfigError(key(k), "expected true or false");
    }
  }

  std::string text(const std::string& k, const std::string& fallback) {
    if (!has(k)) return fallback;
    if (!node_[k].IsScalar()) throw ConfigError(key(k), "expected a string");
    return node_[k].as<std::string>();
  }

  void reject_unknown() const {
    if (!node_) return;
    for (const auto& kv : node_) {
      const auto k = kv.first.as<std::string>();
      if (!seen_.count(k)) {
        throw ConfigError(key(k), "unknown key");
      }
    }
  }

 private:
  double as_number(const std::string& k) {
    const auto& n = node_[k];
    double v = 0.0;
    try {
      v = n.as<double>();
    } catch (const YAML::Exception&) {
      throw ConfigError(key(k), "expected a number");
    }
    if (!std::isfinite(v)) throw ConfigError(key(k), "must be finite");
    return v;
  }

  std::string name_;
  YAML::Node node_;
  std::set<std::string> seen_;
};

void positive(const Section& s, const std::string& k, double v) {
  if (!(v > 0.0)) throw ConfigError(s.key(k), "must be > 0");
}

void non_negative(const Section& s, const std::string& k, double v) {
  if (!(v >= 0.0)) throw ConfigError(s.key(k), "must be >= 0");
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

}  // namespace

FlowProfile RunConfig::flow_profile() const {
  const double r = flow_vessel_radius.value_or(vessel_radius);
  FlowProfile f = FlowProfile::make(flow_kind, q0_ml_s * 1e-6, std::numbers::pi * r * r, alpha);
  if (hr_bpm) {
    f.heart_rate_bpm = *hr_bpm;
  }
  return f;
}

ControllerConfig RunConfig::controller_config() const {
  ControllerConfig c = controller;
  c.gains.delta = delta.value_or(plan.v0);
  c.g_max = limits.g_max;
  return c;
}

RunConfig parse_run_config(const std::string& yaml_text, const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("<file>", std::string("YAML syntax: ") + e.what());
  }
  if (!root.IsMap()) {
    throw ConfigError("<file>", "top level must be a mapping");
  }

  RunConfig c;
  Section top(root, "");
  if (!top.has("centerline")) throw ConfigError("centerline", "required");
  c.centerline = resolve(base_dir, top.text("centerline", ""));
  c.output_dir = resolve(base_dir, top.text("output_dir", "out"));
  for (const char* s : {"flow", "corridor", "sphere", "drag", "controller", "safety", "sim"}) {
    top.has(s);
  }
  top.reject_unknown();

  Section flow(root, "flow");
  try {
    c.flow_kind = parse_flow_kind(flow.text("kind", "constant"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(flow.key("kind"), e.what());
  }
  c.q0_ml_s = flow.number("q0_ml_s", c.q0_ml_s);
  positive(flow, "q0_ml_s", c.q0_ml_s);
  c.alpha = flow.number("alpha", c.alpha);
  if (!(c.alpha >= 0.0 && c.alpha < 1.0)) throw ConfigError(flow.key("alpha"), "must be in [0, 1)");
  c.hr_bpm = flow.optional_number("hr_bpm");
  if (c.hr_bpm) positive(flow, "hr_bpm", *c.hr_bpm);
  c.flow_vessel_radius = flow.optional_number("vessel_radius_m");
  if (c.flow_vessel_radius) positive(flow, "vessel_radius_m", *c.flow_vessel_radius);
  flow.reject_unknown();

  Section corridor(root, "corridor");
  c.vessel_radius = corridor.number("vessel_radius_m", c.vessel_radius);
  positive(corridor, "vessel_radius_m", c.vessel_radius);
  c.clearance_fraction = corridor.number("clearance_fraction", c.clearance_fraction);
  if (!(c.clearance_fraction > 0.0 && c.clearance_fraction <= 1.0))
    throw ConfigError(corridor.key("clearance_fraction"), "must be in (0, 1]");
  corridor.reject_unknown();

  Section sphere(root, "sphere");
  c.sphere.radius = sphere.number("radius_m", c.sphere.radius);
  positive(sphere, "radius_m", c.sphere.radius);
  c.sphere.magnetization = sphere.number("magnetization_a_m", c.sphere.magnetization);
  positive(sphere, "magnetization_a_m", c.sphere.magnetization);
  c.sphere.density = sphere.number("density_kg_m3", c.sphere.density);
  positive(sphere, "density_kg_m3", c.sphere.density);
  sphere.reject_unknown();

  Section drag(root, "drag");
  c.drag = DragParams::for_sphere(c.sphere.radius);
  c.drag.cd = drag.number("cd", c.drag.cd);
  positive(drag, "cd", c.drag.cd);
  c.drag.density = drag.number("blood_density_kg_m3", c.drag.density);
  positive(drag, "blood_density_kg_m3", c.drag.density);
  const std::string law = drag.text("law", "linear");
  if (law == "linear") {
    c.drag.law = DragLaw::linear;
  } else if (law == "quadratic") {
    c.drag.law = DragLaw::quadratic;
  } else {
    throw ConfigError(drag.key("law"), "expected linear or quadratic");
  }
  drag.reject_unknown();

  Section ctl(root, "controller");
  auto& g = c.controller.gains;
  g.kp = ctl.number("kp", g.kp);
  non_negative(ctl, "kp", g.kp);
  g.ki = ctl.number("ki", g.ki);
  non_negative(ctl, "ki", g.ki);
  g.kd = ctl.number("kd", g.kd);
  non_negative(ctl, "kd", g.kd);
  g.kr = ctl.number("kr", g.kr);
  non_negative(ctl, "kr", g.kr);
  c.delta = ctl.optional_number("delta_m_s");
  if (c.delta) positive(ctl, "delta_m_s", *c.delta);
  c.plan.v0 = ctl.number("v0_m_s", c.plan.v0);
  positive(ctl, "v0_m_s", c.plan.v0);
  c.plan.k0 = ctl.number("k0_per_m", c.plan.k0);
  positive(ctl, "k0_per_m", c.plan.k0);
  c.plan.r0 = ctl.number("r0_m", c.plan.r0);
  positive(ctl, "r0_m", c.plan.r0);
  c.plan.v_min = ctl.number("v_min_m_s", c.plan.v_min);
  non_negative(ctl, "v_min_m_s", c.plan.v_min);
  c.controller.pid_force_scale = ctl.number("pid_force_scale", c.controller.pid_force_scale);
  positive(ctl, "pid_force_scale", c.controller.pid_force_scale);
  c.controller.anti_windup = ctl.boolean("anti_windup", c.controller.anti_windup);
  c.controller.feedforward = ctl.boolean("feedforward", c.controller.feedforward);
  c.controller.setpoint_feedforward =
      ctl.boolean("setpoint_feedforward", c.controller.setpoint_feedforward);
  ctl.reject_unknown();

  Section safety(root, "safety");
  c.limits.s_max = safety.number("slew_limit", c.limits.s_max);
  positive(safety, "slew_limit", c.limits.s_max);
  c.limits.g_max = safety.number("g_max_t_m", c.limits.g_max);
  positive(safety, "g_max_t_m", c.limits.g_max);
  c.limits.rise_time = safety.number("rise_time_s", c.limits.rise_time);
  positive(safety, "rise_time_s", c.limits.rise_time);
  c.limits.r_iso = safety.number("r_iso_m", c.limits.r_iso);
  positive(safety, "r_iso_m", c.limits.r_iso);
  safety.reject_unknown();

  Section sim(root, "sim");
  auto& s = c.sim;
  s.dt_physics = sim.number("dt_physics_s", s.dt_physics);
  positive(sim, "dt_physics_s", s.dt_physics);
  s.gradient_update_interval = sim.number("gradient_update_s", s.gradient_update_interval);
  positive(sim, "gradient_update_s", s.gradient_update_interval);
  c.tp_ms = sim.number("tp_ms", c.tp_ms);
  positive(sim, "tp_ms", c.tp_ms);
  s.tp = c.tp_ms / 1000.0;
  s.duration = sim.number("duration_s", s.duration);
  positive(sim, "duration_s", s.duration);
  s.initial_s = sim.number("initial_s_m", s.initial_s);
  non_negative(sim, "initial_s_m", s.initial_s);
  s.lateral_offset = sim.number("lateral_offset_m", s.lateral_offset);
  s.end_tolerance = sim.number("end_tolerance_m", s.end_tolerance);
  non_negative(sim, "end_tolerance_m", s.end_tolerance);
  s.start_at_rest = sim.boolean("start_at_rest", s.start_at_rest);
  s.controller_enabled = sim.boolean("controller", s.controller_enabled);
  s.rate_limit = sim.boolean("rate_limit", s.rate_limit);
  try {
    s.policy = parse_violation_policy(sim.text("violation_policy", "abort"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(sim.key("violation_policy"), e.what());
  }
  sim.reject_unknown();
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("sim", e.what());
  }
  return c;
}

RunConfig load_run_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw ConfigError("--config", "cannot open " + file.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_run_config(text.str(), file.parent_path());
}

Scenario build_scenario(const RunConfig& config) {
  if (!std::filesystem::exists(config.centerline)) {
    throw ConfigError("centerline", "file not found: " + config.centerline.string());
  }
  Centerline line;
  try {
    line = load_centerline(config.centerline);
  } catch (const Error& e) {
    throw ConfigError("centerline", e.what());
  }
  std::vector<double> vessel = line.has_radii()
                                   ? line.radii
                                   : std::vector<double>(line.size(), config.vessel_radius);
  auto path = std::make_shared<const PathSpline>(std::move(line));
  VirtualFixture fixture = [&] {
    try {
      return fit_corridor(path, vessel, config.clearance_fraction);
    } catch (const GeometryError& e) {
      throw ConfigError("centerline.r", e.what());
    }
  }();
  Scenario sc{path,
              std::move(fixture),
              config.flow_profile(),
              config.drag,
              config.sphere,
              config.plan,
              config.controller_config(),
              config.limits};
  if (path->centerline().has_radii() && !config.flow_vessel_radius) {
    const double r0 = path->centerline().radii.front();
    sc.flow.area = std::numbers::pi * r0 * r0;
  }
  return sc;
}

}  // namespace mrbot
