#include "mrbot/safety.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mrbot {

void SafetyLimits::validate() const {
  if (!(s_max > 0.0)) throw std::invalid_argument("slew limit must be > 0");
  if (!(g_max > 0.0)) throw std::invalid_argument("g_max must be > 0");
  if (!(rise_time > 0.0)) throw std::invalid_argument("rise time must be > 0");
  if (!(r_iso > 0.0)) throw std::invalid_argument("isocenter distance must be > 0");
}

double slew_rate(double g_prev, double g_next, const SafetyLimits& limits) {
  return std::abs(g_next - g_prev) / limits.rise_time * limits.r_iso;
}

Vec3 slew_rate(const Vec3& g_prev, const Vec3& g_next, const SafetyLimits& limits) {
  return {slew_rate(g_prev.x(), g_next.x(), limits), slew_rate(g_prev.y(), g_next.y(), limits),
          slew_rate(g_prev.z(), g_next.z(), limits)};
}

WaveformAudit audit_waveform(std::span<const GradientCommand> commands,
                             const SafetyLimits& limits) {
  WaveformAudit audit;
  if (commands.size() < 2) {
    return audit;
  }
  audit.slew.reserve(commands.size() - 1);
  for (std::size_t i = 1; i < commands.size(); ++i) {
    const Vec3 s = slew_rate(commands[i - 1].g, commands[i].g, limits);
    audit.max_slew = audit.max_slew.cwiseMax(s);
    audit.slew.push_back(s);
  }
  audit.compliant = audit.max_slew.maxCoeff() <= limits.s_max;
  return audit;
}

double max_gradient_step(const SafetyLimits& limits) {
  return limits.s_max * limits.rise_time / limits.r_iso;
}

FeasibilityReport build_report(const SimLog& log, const SafetyLimits& limits) {
  FeasibilityReport r;
  for (const auto& c : log.commands) {
    r.max_abs_gradient = r.max_abs_gradient.cwiseMax(c.g.cwiseAbs());
    if (c.clamped) {
      ++r.clamped_commands;
    }
  }
  r.max_slew = audit_waveform(log.commands, limits).max_slew;

  r.worst_vf_margin = std::numeric_limits<double>::infinity();
  for (const auto& s : log.samples) {
    r.worst_vf_margin = std::min(r.worst_vf_margin, s.check.margin);
    if (s.check.violated) {
      ++r.vf_violations;
    }
  }
  if (log.samples.empty()) {
    r.worst_vf_margin = 0.0;
  }
  r.max_tracking_error = log.max_radial_error;
  for (const auto& s : log.samples) {
    r.max_tracking_error = std::max(r.max_tracking_error, s.check.radial_distance);
  }
  r.pass = r.vf_violations == 0 && r.max_slew.maxCoeff() <= limits.s_max &&
           r.clamped_commands == 0;
  return r;
}

}  // namespace mrbot
