// Batch front end: simulate, check-path, flows.
//
// Exit codes: 0 pass, 1 simulation failed or path not feasible, 2 bad input.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "mrbot/config.hpp"
#include "mrbot/errors.hpp"
#include "mrbot/export.hpp"
#include "mrbot/planning.hpp"
#include "mrbot/sim.hpp"

namespace fs = std::filesystem;
using namespace mrbot;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct CommonArgs {
  std::string config;
  std::string out_dir;
  std::optional<double> tp_ms;
  std::string flow;
};

RunConfig load_with_overrides(const CommonArgs& args) {
  RunConfig c = load_run_config(args.config);
  if (!args.out_dir.empty()) {
    c.output_dir = args.out_dir;
  }
  if (args.tp_ms) {
    if (!(*args.tp_ms > 0.0)) throw ConfigError("--tp-ms", "must be > 0");
    c.tp_ms = *args.tp_ms;
    c.sim.tp = c.tp_ms / 1000.0;
    try {
      c.sim.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError("--tp-ms", e.what());
    }
  }
  if (!args.flow.empty()) {
    try {
      c.flow_kind = parse_flow_kind(args.flow);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("--flow", e.what());
    }
    c.hr_bpm.reset();
  }
  return c;
}

std::ofstream open_out(const fs::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) {
    throw Error("cannot write " + file.string());
  }
  return out;
}

int cmd_simulate(const CommonArgs& args) {
  RunConfig config;
  std::optional<Scenario> scenario;
  try {
    config = load_with_overrides(args);
    scenario.emplace(build_scenario(config));
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitInput;
  }

  SimLog log;
  try {
    log = run(config.sim, *scenario);
  } catch (const Error& e) {
    std::cerr << "simulation aborted: " << e.what() << '\n';
    return kExitFail;
  }

  const FeasibilityReport report = build_report(log, config.limits);
  fs::create_directories(config.output_dir);
  {
    auto out = open_out(config.output_dir / "trajectory.csv");
    write_trajectory_csv(out, log);
  }
  {
    auto out = open_out(config.output_dir / "gradients.csv");
    write_gradients_csv(out, log);
  }
  {
    auto out = open_out(config.output_dir / "report.json");
    out << report_json(report, log, config).dump(2) << '\n';
  }

  std::printf("stop: %s at t = %.3f s, %zu samples, %zu gradient updates\n",
              std::string(to_string(log.stop)).c_str(), log.end_time, log.samples.size(),
              log.commands.size());
  std::printf("max |G| (mT/m): %.4f %.4f %.4f  clamped: %zu\n",
              report.max_abs_gradient.x() * 1e3, report.max_abs_gradient.y() * 1e3,
              report.max_abs_gradient.z() * 1e3, report.clamped_commands);
  std::printf("max slew: %.3f %.3f %.3f (limit %.1f)\n", report.max_slew.x(),
              report.max_slew.y(), report.max_slew.z(), config.limits.s_max);
  std::printf("VF violations: %zu  worst margin: %.4g m  max tracking error: %.4g m\n",
              report.vf_violations, report.worst_vf_margin, report.max_tracking_error);
  std::printf("mean control step: %.4f ms\n", log.mean_compute_seconds() * 1e3);
  std::printf("%s\n", report.pass ? "PASS" : "FAIL");
  if (log.stop == StopReason::violation) {
    std::cerr << "simulation aborted: corridor violated at t = " << log.end_time << " s\n";
  }
  return report.pass ? kExitPass : kExitFail;
}

int cmd_check_path(const CommonArgs& args) {
  RunConfig config;
  PathAssessment a;
  try {
    config = load_with_overrides(args);
    a = assess_path(build_scenario(config));
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitInput;
  }

  nlohmann::json j = {
      {"length_m", a.length},
      {"max_curvature_per_m", a.max_curvature},
      {"s_max_curvature_m", a.s_max_curvature},
      {"min_corridor_radius_m", a.min_corridor_radius},
      {"s_min_corridor_m", a.s_min_corridor},
      {"sphere_fits", a.sphere_fits},
      {"min_speed_m_s", a.min_speed},
      {"max_speed_m_s", a.max_speed},
      {"speed_floor_engaged", a.speed_floor_engaged},
      {"peak_blood_velocity_m_s", a.peak_blood_velocity},
      {"required_gradient_t_m", a.required_gradient},
      {"g_max_t_m", config.limits.g_max},
      {"warnings", a.warnings},
      {"failures", a.failures},
      {"pass", a.pass},
  };
  fs::create_directories(config.output_dir);
  {
    auto out = open_out(config.output_dir / "check_path.json");
    out << j.dump(2) << '\n';
  }
  {
    auto out = open_out(config.output_dir / "velocity_profile.csv");
    out << "s,k,r_gc,v\n";
    for (const auto& p : a.profile) {
      out << format_number(p.s) << ',' << format_number(p.curvature) << ','
          << format_number(p.corridor_radius) << ',' << format_number(p.speed) << '\n';
    }
  }

  std::printf("length %.4g m, max curvature %.4g 1/m at s = %.4g m\n", a.length,
              a.max_curvature, a.s_max_curvature);
  std::printf("min corridor radius %.4g m at s = %.4g m (sphere radius %.4g m)\n",
              a.min_corridor_radius, a.s_min_corridor, config.sphere.radius);
  std::printf("speed setpoint %.4g .. %.4g m/s\n", a.min_speed, a.max_speed);
  std::printf("required gradient at peak flow %.4f mT/m (limit %.1f mT/m)\n",
              a.required_gradient * 1e3, config.limits.g_max * 1e3);
  for (const auto& w : a.warnings) std::cerr << "warning: " << w << '\n';
  for (const auto& f : a.failures) std::cerr << "fail: " << f << '\n';
  std::printf("%s\n", a.pass ? "PASS" : "FAIL");
  return a.pass ? kExitPass : kExitFail;
}

struct FlowArgs {
  std::string config;
  std::string flow;
  std::string out_dir;
  double periods = 3.0;
  double rate_hz = 1000.0;
  std::optional<double> q0_ml_s;
  std::optional<double> vessel_radius_m;
};

int cmd_flows(const FlowArgs& args) {
  RunConfig config;
  try {
    if (!args.config.empty()) {
      config = load_run_config(args.config);
    }
    if (!args.flow.empty()) {
      try {
        config.flow_kind = parse_flow_kind(args.flow);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("--flow", e.what());
      }
      config.hr_bpm.reset();
    }
    if (args.q0_ml_s) {
      if (!(*args.q0_ml_s > 0.0)) throw ConfigError("--q0-ml-s", "must be > 0");
      config.q0_ml_s = *args.q0_ml_s;
    }
    if (args.vessel_radius_m) {
      if (!(*args.vessel_radius_m > 0.0)) throw ConfigError("--vessel-radius-m", "must be > 0");
      config.flow_vessel_radius = *args.vessel_radius_m;
    }
    if (!args.out_dir.empty()) {
      config.output_dir = args.out_dir;
    }
    if (!(args.periods > 0.0)) throw ConfigError("--periods", "must be > 0");
    if (!(args.rate_hz > 0.0)) throw ConfigError("--rate-hz", "must be > 0");
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitInput;
  }

  const FlowProfile flow = config.flow_profile();
  fs::create_directories(config.output_dir);
  auto out = open_out(config.output_dir / "flow.csv");
  write_flow_csv(out, flow, args.periods, args.rate_hz);
  std::printf("%s flow: mean %.4g m/s, peak %.4g m/s", std::string(to_string(flow.kind)).c_str(),
              flow.mean_velocity(), peak_blood_velocity(flow));
  if (flow.pulsatile()) std::printf(", period %.4g s", flow.period());
  std::printf("\n");
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MRI-gradient-propelled sphere navigation simulator"};
  app.require_subcommand(1);

  CommonArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Closed-loop run; writes trajectory, gradients and report");
  simulate->add_option("--config", sim_args.config, "Run configuration (YAML)")->required();
  simulate->add_option("--out-dir", sim_args.out_dir, "Output directory (overrides config)");
  simulate->add_option("--tp-ms", sim_args.tp_ms, "Position sampling interval in ms");
  simulate->add_option("--flow", sim_args.flow, "constant, normal or fast");

  CommonArgs check_args;
  auto* check = app.add_subcommand("check-path", "Geometry-only feasibility check");
  check->add_option("--config", check_args.config, "Run configuration (YAML)")->required();
  check->add_option("--out-dir", check_args.out_dir, "Output directory (overrides config)");
  check->add_option("--tp-ms", check_args.tp_ms, "Position sampling interval in ms");
  check->add_option("--flow", check_args.flow, "constant, normal or fast");

  FlowArgs flow_args;
  auto* flows = app.add_subcommand("flows", "Sample a blood flow profile to flow.csv");
  flows->add_option("--config", flow_args.config, "Run configuration (YAML), optional");
  flows->add_option("--flow", flow_args.flow, "constant, normal or fast");
  flows->add_option("--out-dir", flow_args.out_dir, "Output directory");
  flows->add_option("--periods", flow_args.periods, "Number of periods to sample");
  flows->add_option("--rate-hz", flow_args.rate_hz, "Sampling rate");
  flows->add_option("--q0-ml-s", flow_args.q0_ml_s, "Mean volumetric flow in ml/s");
  flows->add_option("--vessel-radius-m", flow_args.vessel_radius_m, "Vessel radius in m");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*simulate) return cmd_simulate(sim_args);
    if (*check) return cmd_check_path(check_args);
    if (*flows) return cmd_flows(flow_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitInput;
}
