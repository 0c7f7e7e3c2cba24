#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "mrbot/control.hpp"

using namespace mrbot;
using testing::kPi;

namespace {

const double kVol = 4.0 / 3.0 * kPi * 3e-4 * 3e-4 * 3e-4;
const double kMoment = 1.9496e6 * kVol;

}  // namespace

TEST_CASE("sphere constants") {
  const SphereParams s;
  CHECK(s.volume() == doctest::Approx(1.13097e-10).epsilon(1e-5));
  CHECK(s.moment() == doctest::Approx(2.2049e-4).epsilon(1e-4));
  CHECK(s.moment() == doctest::Approx(kMoment).epsilon(1e-15));
  CHECK(s.mass() == doctest::Approx(9.18e-7).epsilon(1e-3));
  SphereParams bad;
  bad.radius = 0.0;
  CHECK_THROWS(bad.validate());
}

TEST_CASE("velocity setpoint") {
  const VelocityPlan plan;
  CHECK(velocity_setpoint(plan, 0.0, 1e-3, 1e-3) == doctest::Approx(0.05));
  CHECK(velocity_setpoint(plan, 50.0, 1e-3, 1e-3) == doctest::Approx(0.025));
  CHECK(velocity_setpoint(plan, 100.0, 3e-4, 1.6e-3) == doctest::Approx(0.003667).epsilon(1e-4));
  CHECK(raw_velocity_setpoint(plan, 100.0, 3e-4, 1.6e-3) ==
        doctest::Approx(0.05 / 3 - 1.3e-3 / 0.1).epsilon(1e-14));
}

TEST_CASE("velocity setpoint floor") {
  VelocityPlan plan;
  CHECK(raw_velocity_setpoint(plan, 1000.0, 3e-4, 0.01) < 0.0);
  CHECK(velocity_setpoint(plan, 1000.0, 3e-4, 0.01) == 0.0);
  plan.v_min = 0.002;
  CHECK(velocity_setpoint(plan, 1000.0, 3e-4, 0.01) == 0.002);
  CHECK(velocity_setpoint(plan, 0.0, 3e-4, 3e-4) == doctest::Approx(0.05));
}

TEST_CASE("velocity setpoint property: strictly decreasing in curvature") {
  const VelocityPlan plan;
  double prev = raw_velocity_setpoint(plan, 0.0, 3e-4, 1.6e-3);
  for (int i = 1; i <= 1000; ++i) {
    const double v = raw_velocity_setpoint(plan, 0.5 * i, 3e-4, 1.6e-3);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("velocity error") {
  CHECK(velocity_error(Vec3(1, 2, 3), Vec3(1, 2, 3), Vec3(4, 5, 6), Vec3(4, 5, 6), 0.7).norm() == 0.0);
  const Vec3 e = velocity_error(Vec3(0.01, 0, 0), Vec3::Zero(), Vec3(0.002, 0, 0), Vec3::Zero(), 0.7);
  CHECK(e.x() == doctest::Approx(0.0114).epsilon(1e-12));
  CHECK(e.y() == 0.0);
  const Vec3 dv(0.003, -0.001, 0.002), dp(-0.001, 0.0005, 0.003);
  const Vec3 e1 = velocity_error(dv, Vec3::Zero(), dp, Vec3::Zero(), 0.7);
  const Vec3 e3 = velocity_error(3 * dv, Vec3::Zero(), 3 * dp, Vec3::Zero(), 0.7);
  CHECK((e3 - 3 * e1).norm() < 1e-15);
}

TEST_CASE("pid step") {
  SUBCASE("quiescent") {
    ControllerState st{PidGains{}};
    const auto t = st.step(Vec3::Zero());
    CHECK(t.pf.norm() == 0.0);
    CHECK(t.pi.norm() == 0.0);
    CHECK(t.pd.norm() == 0.0);
  }
  SUBCASE("proportional") {
    ControllerState st{PidGains{}};
    const auto t = st.step(Vec3(0.01, 0, 0));
    CHECK(t.pf.x() == doctest::Approx(-0.02));
    CHECK(t.pd.norm() == 0.0);  // primed with the first error
    CHECK(st.primed());
  }
  SUBCASE("derivative") {
    ControllerState st{PidGains{}};
    st.step(Vec3(0.01, 0, 0));
    const auto t = st.step(Vec3(0.02, 0, 0));
    CHECK(t.pd.x() == doctest::Approx(-0.01 * 0.01 / 0.05));
    CHECK((st.previous_error() - Vec3(0.02, 0, 0)).norm() == 0.0);
  }
  SUBCASE("integral grows linearly until the clamp") {
    PidGains g;
    g.integral_limit = 1e-3;
    ControllerState st{g};
    const Vec3 e(0.01, -0.005, 0);
    int n = 0;
    for (; n < 1000; ++n) {
      const double expected = (n + 1) * 0.01 * g.delta * g.ki;
      if (expected > g.integral_limit) break;
      const auto t = st.step(e);
      CHECK(t.pi.x() == doctest::Approx(-expected).epsilon(1e-12));
      CHECK(t.pi.y() == doctest::Approx((n + 1) * 0.005 * g.delta * g.ki).epsilon(1e-12));
    }
    CHECK(n == 2);
    for (int k = 0; k < 10; ++k) st.step(e);
    CHECK(st.integral().x() == doctest::Approx(-1e-3));
  }
  SUBCASE("reset") {
    ControllerState st{PidGains{}};
    st.step(Vec3(1, 1, 1));
    st.reset();
    CHECK_FALSE(st.primed());
    CHECK(st.integral().norm() == 0.0);
  }
}

TEST_CASE("pid property: linear in the error from a zero state") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-0.02, 0.02);
  std::uniform_real_distribution<double> cd(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec3 e1(u(rng), u(rng), u(rng)), e2(u(rng), u(rng), u(rng));
    const double c = cd(rng);
    ControllerState a{PidGains{}}, b{PidGains{}};
    a.step(e1);
    b.step(c * e1);
    const auto ta = a.step(e2);
    const auto tb = b.step(c * e2);
    CHECK((tb.pf - c * ta.pf).norm() <= 1e-14);
    CHECK((tb.pi - c * ta.pi).norm() <= 1e-14);
    CHECK((tb.pd - c * ta.pd).norm() <= 1e-14);
  }
}

TEST_CASE("gradient command and magnetic force") {
  const SphereParams s;
  const double gmax = 0.04;
  SUBCASE("zero") {
    const auto c = gradient_command(s, Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), gmax);
    CHECK(c.g.norm() == 0.0);
    CHECK_FALSE(c.clamped);
  }
  SUBCASE("10 mT/m") {
    const auto c = gradient_command(s, Vec3(2.2049e-6, 0, 0), Vec3::Zero(), Vec3::Zero(),
                                    Vec3::Zero(), gmax);
    CHECK(c.g.x() == doctest::Approx(0.01).epsilon(1e-4));
    const auto exact = gradient_command(s, Vec3(0.5, 0, 0) * kMoment * 0.01, Vec3::Zero(),
                                        Vec3::Zero(), Vec3(0.5, 0, 0) * kMoment * 0.01, gmax);
    CHECK(exact.g.x() == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(magnetic_force(s, Vec3(0.01, 0, 0)).x() == doctest::Approx(2.2049e-6).epsilon(1e-4));
  }
  SUBCASE("clamp") {
    const auto c = gradient_command(s, Vec3(2 * gmax * kMoment, -2 * gmax * kMoment, 0),
                                    Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), gmax);
    CHECK(c.g.x() == gmax);
    CHECK(c.g.y() == -gmax);
    CHECK(c.clamped);
  }
  SUBCASE("linear in magnetization, volume and gradient") {
    SphereParams twice_m = s;
    twice_m.magnetization *= 2;
    SphereParams twice_vol = s;
    twice_vol.radius *= std::cbrt(2.0);
    const Vec3 g(0.003, -0.002, 0.001);
    const Vec3 f = magnetic_force(s, g);
    CHECK((magnetic_force(twice_m, g) - 2 * f).norm() <= 1e-15 * f.norm());
    CHECK((magnetic_force(twice_vol, g) - 2 * f).norm() <= 1e-12 * f.norm());
    CHECK((magnetic_force(s, 3 * g) - 3 * f).norm() <= 1e-15 * f.norm());
    CHECK(magnetic_force(s, Vec3::Zero()).norm() == 0.0);
  }
}

TEST_CASE("round trip and clamp properties (fuzz)") {
  const SphereParams s;
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double gmax = 0.04;
  for (int i = 0; i < 100000; ++i) {
    const Vec3 f = Vec3(u(rng), u(rng), u(rng)) * (gmax * kMoment * 0.999);
    const auto c = gradient_command(s, f, Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), gmax);
    REQUIRE_FALSE(c.clamped);
    const Vec3 back = magnetic_force(s, c.g);
    if ((back - f).norm() > 1e-12 * f.norm()) FAIL("round trip drifted");
    const Vec3 big = Vec3(u(rng), u(rng), u(rng)) * (10 * gmax * kMoment);
    const auto cb = gradient_command(s, big, Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), gmax);
    if (cb.g.cwiseAbs().maxCoeff() > gmax) FAIL("clamp exceeded");
  }
}

TEST_CASE("trajectory controller") {
  const SphereParams s;
  const auto drag = DragParams::for_sphere(s.radius);
  const double b = drag.coefficient();
  ControllerConfig cfg;
  TrajectoryController ctl(s, drag, cfg);
  CHECK(ctl.force_scale() == doctest::Approx(cfg.pid_force_scale * b));
  CHECK(ctl.state().gains().integral_limit ==
        doctest::Approx(s.moment() * cfg.g_max / ctl.force_scale()));

  ControlInput in;
  in.blood_velocity = Vec3(0.0796, 0, 0);
  in.planned_velocity = Vec3(0.01, 0, 0);
  in.velocity = in.setpoint_velocity = Vec3(0.01, 0, 0);
  const auto out = ctl.update(in);
  CHECK(out.error.norm() == 0.0);
  CHECK(out.feedforward.x() == doctest::Approx(-b * 0.0796));
  CHECK(out.motion_feedforward.x() == doctest::Approx(b * 0.01));
  CHECK(out.command.g.x() == doctest::Approx(b * (0.01 - 0.0796) / s.moment()));

  SUBCASE("regulator output scales into newtons") {
    TrajectoryController c2(s, drag, cfg);
    ControlInput e;
    e.velocity = Vec3(0.01, 0, 0);
    const auto o = c2.update(e);
    CHECK(o.terms.pf.x() == doctest::Approx(-0.02));
    CHECK(o.pid_force.x() == doctest::Approx(-0.02 * c2.force_scale()));
  }
  SUBCASE("feedforward switches") {
    ControllerConfig off = cfg;
    off.feedforward = false;
    off.setpoint_feedforward = false;
    TrajectoryController c3(s, drag, off);
    const auto o = c3.update(in);
    CHECK(o.feedforward.norm() == 0.0);
    CHECK(o.motion_feedforward.norm() == 0.0);
    CHECK(o.command.g.norm() == 0.0);
  }
}

TEST_CASE("anti-windup property: integral stays bounded (fuzz)") {
  const SphereParams s;
  const auto drag = DragParams::for_sphere(s.radius);
  TrajectoryController ctl(s, drag, ControllerConfig{});
  const double limit = ctl.state().gains().integral_limit;
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> scale(-8.0, 1.0);
  for (int i = 0; i < 20000; ++i) {
    ControlInput in;
    const double m = std::pow(10.0, scale(rng));
    in.velocity = Vec3(u(rng), u(rng), u(rng)) * m;
    in.position = Vec3(u(rng), u(rng), u(rng)) * m;
    const auto out = ctl.update(in);
    if (out.terms.pi.cwiseAbs().maxCoeff() > limit) FAIL("integral escaped its clamp");
    if (out.command.g.cwiseAbs().maxCoeff() > 0.04) FAIL("gradient escaped its clamp");
  }
}

TEST_CASE("invalid controller settings") {
  PidGains g;
  g.delta = 0.0;
  CHECK_THROWS(g.validate());
  g = PidGains{};
  g.kp = -1.0;
  CHECK_THROWS(g.validate());
  ControllerConfig c;
  c.pid_force_scale = 0.0;
  CHECK_THROWS(c.validate());
  VelocityPlan p;
  p.k0 = 0.0;
  CHECK_THROWS(p.validate());
}
