#include "mrbot/planning.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <sstream>

#include "mrbot/errors.hpp"

namespace mrbot {

namespace {

std::string at(const char* what, double s) {
  std::ostringstream o;
  o << what << " at s = " << s << " m";
  return o.str();
}

}  // namespace

PathAssessment assess_path(const Scenario& sc, int samples_per_piece) {
  const PathSpline& path = *sc.path;
  const VirtualFixture& vf = sc.fixture;
  const double rs = sc.sphere.radius;
  PathAssessment a;
  a.length = path.length();
  a.min_corridor_radius = std::numeric_limits<double>::infinity();
  a.min_speed = std::numeric_limits<double>::infinity();
  double min_area = std::numeric_limits<double>::infinity();

  const auto nodes = path.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double r = vf.node_radii()[i];
    if (r < a.min_corridor_radius) {
      a.min_corridor_radius = r;
      a.s_min_corridor = nodes[i];
    }
    min_area = std::min(min_area, vessel_area(sc, nodes[i]));
  }
  if (a.min_corridor_radius < rs) {
    a.sphere_fits = false;
    std::ostringstream o;
    o << "corridor radius " << a.min_corridor_radius << " m is narrower than the sphere radius "
      << rs << " m";
    a.failures.push_back(at(o.str().c_str(), a.s_min_corridor));
  }

  const int per = std::max(1, samples_per_piece);
  bool singular = false;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    for (int k = 0; k < per || (i + 2 == nodes.size() && k == per); ++k) {
      const double s = nodes[i] + (nodes[i + 1] - nodes[i]) * double(k) / per;
      ProfilePoint p;
      p.s = s;
      p.corridor_radius = vf.radius_at(s);
      try {
        p.curvature = curvature(path, s);
      } catch (const SingularCurvatureError&) {
        if (!singular) a.failures.push_back(at("degenerate tangent", s));
        singular = true;
        continue;
      }
      const double raw = raw_velocity_setpoint(sc.plan, p.curvature, rs, p.corridor_radius);
      p.speed = velocity_setpoint(sc.plan, p.curvature, rs, p.corridor_radius);
      if (raw < sc.plan.v_min && !a.speed_floor_engaged) {
        a.speed_floor_engaged = true;
        a.s_speed_floor = s;
      }
      if (p.curvature > a.max_curvature) {
        a.max_curvature = p.curvature;
        a.s_max_curvature = s;
      }
      a.min_speed = std::min(a.min_speed, p.speed);
      a.max_speed = std::max(a.max_speed, p.speed);
      a.profile.push_back(p);
    }
  }
  if (a.speed_floor_engaged) {
    a.warnings.push_back(at("velocity setpoint floor engaged", a.s_speed_floor));
  }
  if (a.profile.empty()) {
    a.min_speed = 0.0;
  }

  a.peak_blood_velocity = peak_blood_velocity(sc.flow) * sc.flow.area / min_area;
  a.required_gradient = feedforward_force(sc.drag, a.peak_blood_velocity) / sc.sphere.moment();
  a.gradient_within_limit = a.required_gradient <= sc.limits.g_max;
  if (!a.gradient_within_limit) {
    std::ostringstream o;
    o << "peak-flow feedforward needs " << a.required_gradient * 1e3 << " mT/m, limit is "
      << sc.limits.g_max * 1e3 << " mT/m";
    a.failures.push_back(o.str());
  }
  a.pass = a.sphere_fits && a.gradient_within_limit && !singular;
  return a;
}

}  // namespace mrbot
