#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "mrbot/pchip.hpp"
#include "mrbot/types.hpp"

namespace mrbot {

// Ordered vessel waypoints with cumulative chord-length distance.
struct Centerline {
  std::vector<Vec3> points;
  std::vector<double> path_distance;
  // Per-node vessel radius (m); empty when the source had no `r` column.
  std::vector<double> radii;

  // Validates geometry and fills `path_distance`. Throws GeometryError.
  static Centerline from_points(std::vector<Vec3> points,
                                std::vector<double> radii = {});

  std::size_t size() const { return points.size(); }
  bool has_radii() const { return !radii.empty(); }
};

// CSV with header `x,y,z` or `x,y,z,r`, one waypoint per row, meters.
// The header may be omitted. Blank lines are skipped; CRLF is accepted.
Centerline load_centerline(std::istream& in);
Centerline load_centerline(const std::filesystem::path& file);

struct PathDerivatives {
  Vec3 first;
  Vec3 second;
};

// Which polynomial piece to use when s sits exactly on an interior node.
enum class Side { left, right };

// Per-axis monotone cubic Hermite interpolant of a centerline, parameterized
// by pathDistance over [0, length()]. Immutable once built.
class PathSpline {
 public:
  explicit PathSpline(Centerline centerline);

  double start() const { return 0.0; }
  double end() const { return length_; }
  double length() const { return length_; }
  double mean_spacing() const { return length_ / double(node_count() - 1); }
  std::size_t node_count() const { return centerline_.size(); }
  std::span<const double> nodes() const { return centerline_.path_distance; }
  const Centerline& centerline() const { return centerline_; }

  bool contains(double s) const { return s >= 0.0 && s <= length_; }

  // Throws DomainError outside [0, length()].
  Vec3 eval(double s) const;
  PathDerivatives derivatives(double s, Side side = Side::right) const;
  Vec3 unit_tangent(double s) const;

 private:
  std::size_t piece(double s, Side side) const;
  void require_domain(double s) const;

  Centerline centerline_;
  double length_ = 0.0;
  std::array<MonotoneCubic, 3> axes_;
};

// Guard on the tangent length used by the curvature formula.
inline constexpr double kSpeedEpsilon = 1e-9;

struct CurvatureSample {
  double s;
  double curvature;  // 1/m
  Vec3 first;
  Vec3 second;
};

// Space-curve curvature |r' x r''| / |r'|^3. Throws SingularCurvatureError
// when |r'| <= kSpeedEpsilon, DomainError outside the path.
CurvatureSample curvature_sample(const PathSpline& path, double s);
double curvature(const PathSpline& path, double s);

}  // namespace mrbot
