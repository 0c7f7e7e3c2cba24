#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mrbot/control.hpp"
#include "mrbot/sim_log.hpp"
#include "mrbot/types.hpp"

namespace mrbot {

struct SafetyLimits {
  double s_max = 200.0;     // compared against S = |dG| / T_r * r
  double g_max = 0.04;      // T/m
  double rise_time = 1e-3;  // s
  double r_iso = 0.5;       // m from isocenter

  void validate() const;
};

// S = |G_next - G_prev| / T_r * r_iso.
double slew_rate(double g_prev, double g_next, const SafetyLimits& limits);
// Per axis.
Vec3 slew_rate(const Vec3& g_prev, const Vec3& g_next, const SafetyLimits& limits);

struct WaveformAudit {
  std::vector<Vec3> slew;  // one entry per consecutive pair
  Vec3 max_slew = Vec3::Zero();
  bool compliant = true;   // every axis <= s_max
};

WaveformAudit audit_waveform(std::span<const GradientCommand> commands,
                             const SafetyLimits& limits);

// Largest per-axis step that keeps the slew at or under s_max.
double max_gradient_step(const SafetyLimits& limits);

struct FeasibilityReport {
  Vec3 max_abs_gradient = Vec3::Zero();  // T/m
  Vec3 max_slew = Vec3::Zero();
  std::size_t clamped_commands = 0;
  std::size_t vf_violations = 0;
  double worst_vf_margin = 0.0;      // m
  double max_tracking_error = 0.0;   // m
  bool pass = false;
};

// pass <=> no violations, every slew <= s_max and nothing clamped.
FeasibilityReport build_report(const SimLog& log, const SafetyLimits& limits);

}  // namespace mrbot
