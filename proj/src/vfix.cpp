#include "mrbot/vfix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mrbot/errors.hpp"

namespace mrbot {

VirtualFixture::VirtualFixture(std::shared_ptr<const PathSpline> path,
                               std::vector<double> node_radii)
    : path_(std::move(path)), radii_(std::move(node_radii)) {
  if (!path_) {
    throw GeometryError("virtual fixture needs a path");
  }
  if (radii_.size() != path_->node_count()) {
    throw GeometryError("corridor radius count " + std::to_string(radii_.size()) +
                        " does not match node count " + std::to_string(path_->node_count()));
  }
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    if (!(radii_[i] > 0.0) || !std::isfinite(radii_[i])) {
      throw GeometryError("corridor radius at node " + std::to_string(i) + " must be > 0");
    }
  }
}

double VirtualFixture::radius_at(double s) const {
  const auto nodes = path_->nodes();
  s = std::clamp(s, nodes.front(), nodes.back());
  auto it = std::upper_bound(nodes.begin(), nodes.end(), s);
  std::size_t i = it == nodes.begin() ? 0 : std::size_t(it - nodes.begin()) - 1;
  i = std::min(i, nodes.size() - 2);
  const double w = (s - nodes[i]) / (nodes[i + 1] - nodes[i]);
  return (1.0 - w) * radii_[i] + w * radii_[i + 1];
}

double VirtualFixture::min_radius() const { return *std::min_element(radii_.begin(), radii_.end()); }

VirtualFixture fit_corridor(std::shared_ptr<const PathSpline> path,
                            std::span<const double> vessel_radii, double clearance_fraction) {
  if (!(clearance_fraction > 0.0 && clearance_fraction <= 1.0)) {
    throw GeometryError("clearance fraction must lie in (0, 1]");
  }
  std::vector<double> radii;
  radii.reserve(vessel_radii.size());
  for (std::size_t i = 0; i < vessel_radii.size(); ++i) {
    if (!(vessel_radii[i] > 0.0)) {
      throw GeometryError("vessel radius at node " + std::to_string(i) + " must be > 0");
    }
    radii.push_back(clearance_fraction * vessel_radii[i]);
  }
  return VirtualFixture(std::move(path), std::move(radii));
}

namespace {

constexpr double kInvPhi = 0.6180339887498949;

double golden_section(const PathSpline& path, const Vec3& p, double a, double b, double tol) {
  auto f = [&](double s) { return (path.eval(s) - p).squaredNorm(); };
  double c = b - (b - a) * kInvPhi;
  double d = a + (b - a) * kInvPhi;
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * kInvPhi;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * kInvPhi;
      fd = f(d);
    }
  }
  // The bracket ends are candidates too; they matter at the domain ends.
  double best = fc < fd ? c : d;
  double fbest = std::min(fc, fd);
  for (double e : {a, b}) {
    const double fe = f(e);
    if (fe < fbest) {
      best = e;
      fbest = fe;
    }
  }
  return best;
}

}  // namespace

double nearest_on_path(const PathSpline& path, const Vec3& p, double s_hint) {
  const double lo_dom = path.start();
  const double hi_dom = path.end();
  const double w = 5.0 * path.mean_spacing();
  const double tol = 1e-10 * path.length();
  const std::size_t max_walks = path.node_count() + 2;

  double centre = std::clamp(s_hint, lo_dom, hi_dom);
  double s = centre;
  for (std::size_t walk = 0; walk < max_walks; ++walk) {
    const double lo = std::max(lo_dom, centre - w);
    const double hi = std::min(hi_dom, centre + w);
    s = golden_section(path, p, lo, hi, tol);
    const bool at_lo = lo > lo_dom && s - lo <= 2.0 * tol;
    const bool at_hi = hi < hi_dom && hi - s <= 2.0 * tol;
    if (!at_lo && !at_hi) {
      break;
    }
    centre = s;
  }
  // Golden section leaves an along-path error near tol; a couple of Newton
  // steps on d/ds |r(s) - p|^2 remove it when they help.
  double best = (path.eval(s) - p).squaredNorm();
  for (int k = 0; k < 2; ++k) {
    const auto d = path.derivatives(s);
    const Vec3 r = path.eval(s) - p;
    const double denom = d.first.squaredNorm() + r.dot(d.second);
    if (!(denom > 0.0)) break;
    const double next = std::clamp(s - r.dot(d.first) / denom, lo_dom, hi_dom);
    const double dist = (path.eval(next) - p).squaredNorm();
    if (!(dist < best)) break;
    s = next;
    best = dist;
  }
  return std::clamp(s, lo_dom, hi_dom);
}

VfCheck check(const VirtualFixture& vf, const Vec3& p, double sphere_radius, double s_hint) {
  if (!(sphere_radius > 0.0)) {
    throw std::invalid_argument("sphere radius must be > 0");
  }
  VfCheck out;
  out.s_nearest = nearest_on_path(vf.path(), p, s_hint);
  out.radial_distance = (p - vf.path().eval(out.s_nearest)).norm();
  out.margin = vf.radius_at(out.s_nearest) - out.radial_distance - sphere_radius;
  out.violated = out.margin < 0.0;
  return out;
}

}  // namespace mrbot
