#include <cmath>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "mrbot/errors.hpp"
#include "mrbot/path.hpp"

using namespace mrbot;
using testing::kPi;

namespace {

Centerline parse(const std::string& text) {
  std::istringstream in(text);
  return load_centerline(in);
}

}  // namespace

TEST_CASE("load_centerline: path distances") {
  auto unit = parse("x,y,z\n0,0,0\n1,0,0\n");
  REQUIRE(unit.size() == 2);
  CHECK(unit.path_distance[0] == 0.0);
  CHECK(unit.path_distance[1] == 1.0);

  auto pyth = parse("x,y,z\n0,0,0\n3,4,0\n");
  CHECK(pyth.path_distance[1] == doctest::Approx(5.0).epsilon(1e-15));

  auto many = parse("0,0,0\n1,0,0\n1,2,0\n1,2,-2\n");
  CHECK(many.path_distance.back() == doctest::Approx(5.0));
}

TEST_CASE("load_centerline: formats") {
  SUBCASE("CRLF and blank lines") {
    auto c = parse("x,y,z\r\n0,0,0\r\n\r\n0.5,0,0\r\n1,0,0\r\n");
    CHECK(c.size() == 3);
  }
  SUBCASE("radius column") {
    auto c = parse("x,y,z,r\n0,0,0,0.002\n1,0,0,0.001\n");
    REQUIRE(c.has_radii());
    CHECK(c.radii[1] == 0.001);
  }
  SUBCASE("scientific notation and spaces") {
    auto c = parse("x, y, z\n 0, 0, 0\n1e-3, 2.5E-3 ,0\n");
    CHECK(c.points[1].y() == 2.5e-3);
  }
}

TEST_CASE("load_centerline: errors") {
  CHECK_THROWS_AS(parse("x,y,z\n0,0,0\n0,0,0\n"), GeometryError);
  CHECK_THROWS_AS(parse("x,y,z\n0,0,0\n"), GeometryError);
  CHECK_THROWS_AS(parse(""), GeometryError);
  try {
    parse("x,y,z\n0,0,0\n1,abc,0\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  try {
    parse("x,y,z\n0,0,0\n1,0\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse("x,y,z,r\n0,0,0,0.002\n1,0,0\n"), ParseError);
  CHECK_THROWS_AS(load_centerline(std::filesystem::path("/nonexistent/centerline.csv")), Error);
}

TEST_CASE("spline reproduces a straight line") {
  const PathSpline p(Centerline::from_points(testing::line_points(11, 1.0)));
  CHECK(p.length() == doctest::Approx(1.0));
  CHECK((p.eval(0.0) - Vec3(0, 0, 0)).norm() == 0.0);
  CHECK((p.eval(p.end()) - Vec3(1, 0, 0)).norm() < 1e-15);
  for (int i = 0; i <= 1000; ++i) {
    const double s = p.length() * i / 1000;
    const Vec3 q = p.eval(s);
    CHECK(std::abs(q.x() - s) <= 1e-12);
    CHECK(std::abs(q.y()) <= 1e-12);
    CHECK(std::abs(q.z()) <= 1e-12);
    const auto d = p.derivatives(s);
    CHECK((d.first - Vec3::UnitX()).norm() < 1e-12);
    CHECK(d.second.norm() < 1e-9);
    CHECK(curvature(p, s) < 1e-9);
  }
}

TEST_CASE("two-point path midpoint") {
  const PathSpline p(Centerline::from_points({Vec3(1, 1, 1), Vec3(3, 5, -1)}));
  CHECK((p.eval(p.length() / 2) - Vec3(2, 3, 0)).norm() < 1e-14);
}

TEST_CASE("spline stays inside its domain") {
  const PathSpline p(Centerline::from_points(testing::line_points(3, 1.0)));
  CHECK_THROWS_AS(p.eval(-1e-9), DomainError);
  CHECK_THROWS_AS(p.eval(1.0 + 1e-9), DomainError);
  CHECK_THROWS_AS(p.derivatives(2.0), DomainError);
  CHECK_THROWS_AS(curvature(p, -0.5), DomainError);
  CHECK_NOTHROW(p.eval(1.0));
}

TEST_CASE("spline interpolates every node exactly") {
  for (const auto& pts : {testing::arc_points(0.02, 0.0, kPi / 2, 7),
                          testing::helix_points(0.01, 0.005, 1.5, 8),
                          std::vector<Vec3>{Vec3(0, 0, 0), Vec3(1e-3, 2e-3, 0), Vec3(1.5e-3, 2e-3, 1e-3),
                                            Vec3(4e-3, -1e-3, 2e-3)}}) {
    const PathSpline p(Centerline::from_points(pts));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      CHECK((p.eval(p.nodes()[i]) - pts[i]).norm() <= 1e-12);
    }
  }
}

TEST_CASE("first derivative is continuous across interior nodes") {
  const PathSpline p(Centerline::from_points(testing::helix_points(0.01, 0.005, 2.0, 5)));
  for (std::size_t i = 1; i + 1 < p.node_count(); ++i) {
    const double s = p.nodes()[i];
    const Vec3 left = p.derivatives(s, Side::left).first;
    const Vec3 right = p.derivatives(s, Side::right).first;
    CHECK((left - right).norm() <= 1e-10);
  }
}

TEST_CASE("first derivative matches a central finite difference") {
  const PathSpline p(Centerline::from_points(testing::helix_points(0.01, 0.005, 1.5, 8)));
  const double h = 1e-5 * p.length();
  for (int i = 1; i < 200; ++i) {
    double s = p.length() * i / 200;
    // keep the stencil inside a single piece
    const auto nodes = p.nodes();
    for (double node : nodes) {
      if (std::abs(s - node) < 2 * h) s += 4 * h;
    }
    const Vec3 fd = (p.eval(s + h) - p.eval(s - h)) / (2 * h);
    const Vec3 an = p.derivatives(s).first;
    CHECK((fd - an).norm() <= 1e-4 * an.norm());
  }
}

TEST_CASE("curvature: circle of radius 20 mm") {
  // Three-quarter turn, 16 nodes per quarter so nodes hit the extrema.
  const PathSpline p(Centerline::from_points(testing::arc_points(0.02, 0.0, 1.5 * kPi, 49)));
  const double lo = 0.1 * p.length(), hi = 0.9 * p.length();
  for (int i = 0; i <= 500; ++i) {
    const double s = lo + (hi - lo) * i / 500;
    CHECK(curvature(p, s) == doctest::Approx(50.0).epsilon(0.01));
  }
}

TEST_CASE("curvature: helix R = 0.01, c = 0.005") {
  const double R = 0.01, c = 0.005;
  const double k = R / (R * R + c * c);
  CHECK(k == doctest::Approx(80.0));
  const PathSpline p(Centerline::from_points(testing::helix_points(R, c, 1.5, 16)));
  const double lo = 0.1 * p.length(), hi = 0.9 * p.length();
  for (int i = 0; i <= 500; ++i) {
    const double s = lo + (hi - lo) * i / 500;
    CHECK(curvature(p, s) == doctest::Approx(k).epsilon(0.02));
  }
}

TEST_CASE("curvature is non-negative and finite on an irregular path") {
  const PathSpline p(Centerline::from_points(
      {Vec3(0, 0, 0), Vec3(1e-3, 0, 0), Vec3(2e-3, 1e-3, 0), Vec3(2e-3, 3e-3, 1e-3),
       Vec3(5e-3, 3e-3, 1e-3), Vec3(6e-3, 0, 0)}));
  for (int i = 0; i <= 1000; ++i) {
    const double k = curvature(p, p.length() * i / 1000);
    CHECK(std::isfinite(k));
    CHECK(k >= 0.0);
  }
}

TEST_CASE("hairpin node has a degenerate tangent") {
  // Every coordinate has an extremum or is flat at the middle node, so all
  // monotone tangents vanish there.
  const PathSpline p(Centerline::from_points({Vec3(0, 0, 0), Vec3(1, 1, 0), Vec3(0, 0, 0)}));
  CHECK_THROWS_AS(curvature(p, p.nodes()[1]), SingularCurvatureError);
  CHECK_THROWS_AS(p.unit_tangent(p.nodes()[1]), Error);
  CHECK_NOTHROW(curvature(p, 0.3 * p.length()));
}

TEST_CASE("unit tangent") {
  const PathSpline p(Centerline::from_points(testing::line_points(4, 2.0, Vec3(0, 1, 1).normalized())));
  CHECK((p.unit_tangent(0.7) - Vec3(0, 1, 1).normalized()).norm() < 1e-12);
}

TEST_CASE("bundled datasets load and have the advertised shape") {
  const std::string dir = MRBOT_DATA_DIR;
  const auto straight = load_centerline(std::filesystem::path(dir + "/straight.csv"));
  CHECK(straight.size() >= 2);
  const auto helix = load_centerline(std::filesystem::path(dir + "/helix.csv"));
  CHECK(helix.has_radii());
  const PathSpline hp(helix);
  double zmin = 1e9, zmax = -1e9;
  for (const auto& q : helix.points) {
    zmin = std::min(zmin, q.z());
    zmax = std::max(zmax, q.z());
  }
  CHECK(zmax - zmin > 0.0);  // genuinely three-dimensional
  const PathSpline sp(load_centerline(std::filesystem::path(dir + "/s_curve.csv")));
  double kmax = 0.0;
  for (int i = 0; i <= 2000; ++i) kmax = std::max(kmax, curvature(sp, sp.length() * i / 2000));
  CHECK(kmax > 10.0);
}
