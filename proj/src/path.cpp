#include "mrbot/path.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>

#include "mrbot/errors.hpp"

namespace mrbot {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    out.push_back(trim(line.substr(pos, comma - pos)));
    if (comma == std::string_view::npos) {
      break;
    }
    pos = comma + 1;
  }
  return out;
}

bool parse_double(std::string_view text, double& out) {
  if (!text.empty() && text.front() == '+') {
    text.remove_prefix(1);
  }
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

bool is_header(const std::vector<std::string_view>& f) {
  if (f.size() < 3 || f.size() > 4) {
    return false;
  }
  return f[0] == "x" && f[1] == "y" && f[2] == "z" && (f.size() == 3 || f[3] == "r");
}

}  // namespace

Centerline Centerline::from_points(std::vector<Vec3> points, std::vector<double> radii) {
  if (points.size() < 2) {
    throw GeometryError("centerline needs at least 2 points, got " +
                        std::to_string(points.size()));
  }
  if (!radii.empty() && radii.size() != points.size()) {
    throw GeometryError("radius count does not match point count");
  }
  Centerline c;
  c.path_distance.reserve(points.size());
  c.path_distance.push_back(0.0);
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double step = (points[i] - points[i - 1]).norm();
    if (!(step > 0.0)) {
      throw GeometryError("points " + std::to_string(i - 1) + " and " + std::to_string(i) +
                          " coincide");
    }
    const double next = c.path_distance.back() + step;
    if (!(next > c.path_distance.back())) {
      throw GeometryError("path distance stalls at point " + std::to_string(i));
    }
    c.path_distance.push_back(next);
  }
  c.points = std::move(points);
  c.radii = std::move(radii);
  return c;
}

Centerline load_centerline(std::istream& in) {
  std::vector<Vec3> points;
  std::vector<double> radii;
  std::size_t columns = 0;
  std::string raw;
  std::size_t line_no = 0;
  bool seen_content = false;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty()) {
      continue;
    }
    auto fields = split_fields(line);
    if (!seen_content) {
      seen_content = true;
      if (is_header(fields)) {
        columns = fields.size();
        continue;
      }
    }
    if (columns == 0) {
      columns = fields.size();
      if (columns != 3 && columns != 4) {
        throw ParseError(line_no, "expected 3 or 4 columns, got " + std::to_string(columns));
      }
    }
    if (fields.size() != columns) {
      throw ParseError(line_no, "expected " + std::to_string(columns) + " columns, got " +
                                    std::to_string(fields.size()));
    }
    double v[4] = {0, 0, 0, 0};
    for (std::size_t k = 0; k < columns; ++k) {
      if (!parse_double(fields[k], v[k])) {
        throw ParseError(line_no, "not a finite number: '" + std::string(fields[k]) + "'");
      }
    }
    points.emplace_back(v[0], v[1], v[2]);
    if (columns == 4) {
      radii.push_back(v[3]);
    }
  }
  return Centerline::from_points(std::move(points), std::move(radii));
}

Centerline load_centerline(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw Error("cannot open centerline file " + file.string());
  }
  return load_centerline(in);
}

PathSpline::PathSpline(Centerline centerline) : centerline_(std::move(centerline)) {
  if (centerline_.size() < 2 || centerline_.path_distance.size() != centerline_.size()) {
    throw GeometryError("PathSpline needs a validated centerline");
  }
  length_ = centerline_.path_distance.back();
  for (int axis = 0; axis < 3; ++axis) {
    std::vector<double> values;
    values.reserve(centerline_.size());
    for (const auto& p : centerline_.points) {
      values.push_back(p[axis]);
    }
    axes_[axis] = MonotoneCubic(centerline_.path_distance, std::move(values));
  }
}

void PathSpline::require_domain(double s) const {
  if (!(s >= 0.0 && s <= length_)) {
    std::ostringstream msg;
    msg << "pathDistance " << s << " outside [0, " << length_ << "]";
    throw DomainError(msg.str());
  }
}

std::size_t PathSpline::piece(double s, Side side) const {
  std::size_t i = axes_[0].piece(s);
  if (side == Side::left && i > 0 && s == centerline_.path_distance[i]) {
    --i;
  }
  return i;
}

Vec3 PathSpline::eval(double s) const {
  require_domain(s);
  const std::size_t i = piece(s, Side::right);
  return {axes_[0].evaluate(s, i).value, axes_[1].evaluate(s, i).value,
          axes_[2].evaluate(s, i).value};
}

PathDerivatives PathSpline::derivatives(double s, Side side) const {
  require_domain(s);
  const std::size_t i = piece(s, side);
  PathDerivatives out;
  for (int axis = 0; axis < 3; ++axis) {
    const auto sample = axes_[axis].evaluate(s, i);
    out.first[axis] = sample.d1;
    out.second[axis] = sample.d2;
  }
  return out;
}

Vec3 PathSpline::unit_tangent(double s) const {
  const Vec3 d = derivatives(s).first;
  const double n = d.norm();
  if (!(n > kSpeedEpsilon)) {
    throw SingularCurvatureError("degenerate tangent at s = " + std::to_string(s));
  }
  return d / n;
}

CurvatureSample curvature_sample(const PathSpline& path, double s) {
  const auto [d1, d2] = path.derivatives(s);
  const double speed = d1.norm();
  if (!(speed > kSpeedEpsilon)) {
    throw SingularCurvatureError("degenerate tangent at s = " + std::to_string(s));
  }
  return {s, d1.cross(d2).norm() / (speed * speed * speed), d1, d2};
}

double curvature(const PathSpline& path, double s) { return curvature_sample(path, s).curvature; }

}  // namespace mrbot
