#include "mrbot/hemo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mrbot {

FlowKind parse_flow_kind(std::string_view name) {
  if (name == "constant") return FlowKind::constant;
  if (name == "normal") return FlowKind::normal;
  if (name == "fast") return FlowKind::fast;
  throw std::invalid_argument("unknown flow kind '" + std::string(name) +
                              "' (expected constant, normal or fast)");
}

std::string_view to_string(FlowKind kind) {
  switch (kind) {
    case FlowKind::constant:
      return "constant";
    case FlowKind::normal:
      return "normal";
    case FlowKind::fast:
      return "fast";
  }
  return "?";
}

FlowProfile FlowProfile::make(FlowKind kind, double q0, double area, double alpha) {
  FlowProfile f;
  f.kind = kind;
  f.q0 = q0;
  f.area = area;
  f.alpha = alpha;
  f.heart_rate_bpm = kind == FlowKind::fast ? kFastHeartRateBpm : kNormalHeartRateBpm;
  return f;
}

void FlowProfile::validate() const {
  if (!(q0 > 0.0)) throw std::invalid_argument("flow q0 must be > 0");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("flow alpha must be in [0, 1)");
  if (!(heart_rate_bpm > 0.0)) throw std::invalid_argument("flow heart rate must be > 0");
  if (!(area > 0.0)) throw std::invalid_argument("flow area must be > 0");
}

double cardiac_waveform(double phase) {
  const double s = std::max(0.0, std::sin(phase));
  return 4.0 * s * s - 1.0;
}

double volumetric_flow(const FlowProfile& f, double t) {
  if (!f.pulsatile()) {
    return f.q0;
  }
  const double phase = 2.0 * std::numbers::pi * f.heart_rate_bpm * t / 60.0;
  return f.q0 * (1.0 + f.alpha * cardiac_waveform(phase));
}

double blood_velocity(const FlowProfile& f, double t) { return volumetric_flow(f, t) / f.area; }

double blood_velocity(const FlowProfile& f, double t, double local_area) {
  return volumetric_flow(f, t) / local_area;
}

double peak_blood_velocity(const FlowProfile& f) {
  // Waveform peaks at 3 when sin(phase) = 1.
  return f.pulsatile() ? f.mean_velocity() * (1.0 + 3.0 * f.alpha) : f.mean_velocity();
}

DragParams DragParams::for_sphere(double radius) {
  DragParams d;
  d.ref_area = std::numbers::pi * radius * radius;
  return d;
}

void DragParams::validate() const {
  if (!(cd > 0.0)) throw std::invalid_argument("drag cd must be > 0");
  if (!(density > 0.0)) throw std::invalid_argument("blood density must be > 0");
  if (!(ref_area > 0.0)) throw std::invalid_argument("drag reference area must be > 0");
}

double drag_force(const DragParams& d, double v_blood, double v_sphere) {
  const double rel = v_blood - v_sphere;
  if (d.law == DragLaw::quadratic) {
    return d.coefficient() * std::abs(rel) * rel;
  }
  return d.coefficient() * rel;
}

Vec3 drag_force(const DragParams& d, const Vec3& v_blood, const Vec3& v_sphere) {
  const Vec3 rel = v_blood - v_sphere;
  if (d.law == DragLaw::quadratic) {
    return d.coefficient() * rel.norm() * rel;
  }
  return d.coefficient() * rel;
}

double feedforward_force(const DragParams& d, double v) { return drag_force(d, v, 0.0); }

}  // namespace mrbot
