#pragma once

#include <memory>
#include <span>
#include <vector>

#include "mrbot/path.hpp"
#include "mrbot/types.hpp"

namespace mrbot {

// Corridor (tube) around the centerline whose exterior is forbidden.
// Radius is given per node and interpolated linearly in pathDistance.
class VirtualFixture {
 public:
  VirtualFixture(std::shared_ptr<const PathSpline> path, std::vector<double> node_radii);

  const PathSpline& path() const { return *path_; }
  std::shared_ptr<const PathSpline> shared_path() const { return path_; }
  std::span<const double> node_radii() const { return radii_; }

  double radius_at(double s) const;
  double min_radius() const;

 private:
  std::shared_ptr<const PathSpline> path_;
  std::vector<double> radii_;
};

// R_GC(node i) = clearance_fraction * vessel_radii[i].
// Throws GeometryError for non-positive radii, a count mismatch, or a
// clearance outside (0, 1].
VirtualFixture fit_corridor(std::shared_ptr<const PathSpline> path,
                            std::span<const double> vessel_radii, double clearance_fraction);

// Local closest-point search. Golden-section refinement on a window of
// +/- 5 mean node spacings around the hint; if the minimum lands on an
// interior window edge the window is re-centred and the search repeats.
double nearest_on_path(const PathSpline& path, const Vec3& p, double s_hint);

struct VfCheck {
  double s_nearest = 0.0;
  double radial_distance = 0.0;
  double margin = 0.0;  // R_GC(s*) - d_r - Rs
  bool violated = false;
};

VfCheck check(const VirtualFixture& vf, const Vec3& p, double sphere_radius, double s_hint);

}  // namespace mrbot
