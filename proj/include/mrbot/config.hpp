#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "mrbot/control.hpp"
#include "mrbot/hemo.hpp"
#include "mrbot/safety.hpp"
#include "mrbot/sim.hpp"

namespace mrbot {

// Parsed run configuration. Units are SI except where the key name carries
// another unit (q0_ml_s, tp_ms); those are converted on load and echoed back
// unchanged.
struct RunConfig {
  std::filesystem::path centerline;
  std::filesystem::path output_dir = "out";

  FlowKind flow_kind = FlowKind::constant;
  double q0_ml_s = 1.0;
  double alpha = kDefaultPulsatility;
  std::optional<double> hr_bpm;             // default depends on kind
  std::optional<double> flow_vessel_radius; // default corridor.vessel_radius_m

  double vessel_radius = 0.002;  // used when the CSV has no r column
  double clearance_fraction = 0.8;

  SphereParams sphere;
  DragParams drag = DragParams::for_sphere(SphereParams{}.radius);
  VelocityPlan plan;
  ControllerConfig controller;
  std::optional<double> delta;  // default plan.v0
  SafetyLimits limits;
  SimConfig sim;
  double tp_ms = 100.0;  // echoed as given; sim.tp = tp_ms / 1000

  FlowProfile flow_profile() const;
  // Applies `delta` defaulting and copies g_max into the controller.
  ControllerConfig controller_config() const;
};

// Throws ConfigError naming the offending dotted key. Relative file paths are
// resolved against `base_dir`.
RunConfig parse_run_config(const std::string& yaml_text,
                           const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& file);

// Loads the centerline and assembles path, corridor and physics.
// Throws ConfigError for bad centerline files or geometry.
Scenario build_scenario(const RunConfig& config);

}  // namespace mrbot
