#pragma once

#include <string_view>

#include "mrbot/types.hpp"

namespace mrbot {

enum class FlowKind { constant, normal, fast };

FlowKind parse_flow_kind(std::string_view name);  // throws std::invalid_argument
std::string_view to_string(FlowKind kind);

inline constexpr double kNormalHeartRateBpm = 60.0;
inline constexpr double kFastHeartRateBpm = 120.0;
inline constexpr double kDefaultPulsatility = 0.8;

// Blood flow through a rigid vessel. Pulsatile kinds modulate the mean
// volumetric flow with a rectified-sine systolic pulse whose time average
// is zero, so the mean flow stays q0 for every kind.
struct FlowProfile {
  FlowKind kind = FlowKind::constant;
  double q0 = 1e-6;             // mean volumetric flow, m^3/s
  double alpha = kDefaultPulsatility;
  double heart_rate_bpm = kNormalHeartRateBpm;
  double area = 0.0;            // reference cross-section, m^2

  // Default heart rate for the kind (60 normal, 120 fast).
  static FlowProfile make(FlowKind kind, double q0, double area,
                          double alpha = kDefaultPulsatility);

  void validate() const;  // throws std::invalid_argument naming the field
  bool pulsatile() const { return kind != FlowKind::constant; }
  double period() const { return 60.0 / heart_rate_bpm; }
  double mean_velocity() const { return q0 / area; }
};

// Zero-mean pulse shape: 4*max(0, sin(phase))^2 - 1, range [-1, 3].
double cardiac_waveform(double phase);

double volumetric_flow(const FlowProfile& f, double t);
// Mean cross-section speed at the reference area.
double blood_velocity(const FlowProfile& f, double t);
// Speed through a different cross-section carrying the same flow.
double blood_velocity(const FlowProfile& f, double t, double local_area);
// Largest speed over one period at the reference area.
double peak_blood_velocity(const FlowProfile& f);

enum class DragLaw { linear, quadratic };

struct DragParams {
  double cd = 0.47;
  double density = 1025.0;   // kg/m^3
  double ref_area = 0.0;     // sphere frontal area, m^2
  DragLaw law = DragLaw::linear;

  static DragParams for_sphere(double radius);
  void validate() const;
  // 1/2 * Cd * p * Re (N per m/s under the linear law).
  double coefficient() const { return 0.5 * cd * density * ref_area; }
};

// Signed drag pushing the sphere toward the blood velocity. Linear law
// magnitude is 1/2 Cd p Re |V_blood - V_s|.
double drag_force(const DragParams& d, double v_blood, double v_sphere);
Vec3 drag_force(const DragParams& d, const Vec3& v_blood, const Vec3& v_sphere);

// Drag of blood moving at V on a sphere at rest: the force the feedforward
// gradient must cancel.
double feedforward_force(const DragParams& d, double v);

}  // namespace mrbot
