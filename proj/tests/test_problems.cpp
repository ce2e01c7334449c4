#include <lcg/problems.hpp>

#include <doctest.h>

#include <cmath>

using namespace lcg;

TEST_SUITE("problems") {

TEST_CASE("closures") {
  CHECK(fractional_flow(1.0) == doctest::Approx(1.0));
  CHECK(fractional_flow(0.0) == 0.0);
  CHECK(fractional_flow(0.5) == doctest::Approx(5.0 / 6.0));
  CHECK(total_mobility(0.0) == doctest::Approx(0.2));
  CHECK(flux_is_monotone(fractional_flow));
  CHECK_FALSE(flux_is_monotone([](double s) { return 1.0 - s; }));
  for (double s : {0.1, 0.4, 0.77}) {
    const double h = 1e-6;
    const double fd = (fractional_flow(s + h) - fractional_flow(s - h)) / (2 * h);
    CHECK(fractional_flow_derivative(s) == doctest::Approx(fd).epsilon(1e-7));
  }
  CHECK(max_flux_derivative(registry("ex1-3")) == doctest::Approx(1.0));
  CHECK(max_flux_derivative(registry("ex1-1")) > 2.0);
}

TEST_CASE("registry") {
  for (const auto& name : registry_names()) {
    const auto p = registry(name);
    CHECK(p.name == name);
    CHECK(static_cast<bool>(p.kappa));
    CHECK(static_cast<bool>(p.s0));
    CHECK(p.t_final > 0.0);
    for (double x : {0.05, 0.5, 0.95})
      for (double y : {0.05, 0.5, 0.95}) CHECK(p.kappa(Vec2(x, y)) > 0.0);
  }
  try {
    registry("ex9-9");
    FAIL("expected a config error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
  }
  CHECK(registry("ex2-1").mode == PhaseMode::TwoPhase);
  CHECK(registry("ex1-1").mode == PhaseMode::Single);
  CHECK(registry("ex2-3").t_final == doctest::Approx(0.02));
}

TEST_CASE("heterogeneous permeability guard") {
  // The denominators stay >= 0.25 * 0.001 on the unit square.
  for (int i = 0; i <= 200; ++i)
    for (int j = 0; j <= 200; ++j) CHECK_NOTHROW(kappa_heterog(Vec2(i / 200.0, j / 200.0)));
  // Far outside the square the first factor changes sign.
  CHECK_THROWS_AS(kappa_heterog(Vec2(-3.0 - 1.0 / 22.4, 0.5)), Error);
}

TEST_CASE("initial saturations") {
  CHECK(initial_step(Vec2(0.0, 0.3)) == 1.0);
  CHECK(initial_step(Vec2(1e-9, 0.3)) == 0.0);
  CHECK(initial_smooth(Vec2(0.0, 0.3)) == 1.0);
  CHECK(initial_smooth(Vec2(1.0, 0.3)) == doctest::Approx(0.5));
}

TEST_CASE("separable smooth case") {
  const auto p = registry("ex1-3");
  // v = -kappa grad p equals (x2 - x2^2, 0).
  for (double x : {0.1, 0.6})
    for (double y : {0.2, 0.7}) {
      const Vec2 pt(x, y);
      const Vec2 v = -p.kappa(pt) * p.exact_gradient(pt);
      CHECK(v.x() == doctest::Approx(y - y * y));
      CHECK(v.y() == doctest::Approx(0.0));
      const double h = 1e-6;
      const double fd = (p.exact_pressure(pt + Vec2(h, 0)) - p.exact_pressure(pt - Vec2(h, 0))) / (2 * h);
      CHECK(fd == doctest::Approx(p.exact_gradient(pt).x()).epsilon(1e-8));
    }
  CHECK(p.exact_pressure(Vec2(0, 0.3)) == doctest::Approx(1.0));
  CHECK(p.exact_pressure(Vec2(1, 0.3)) == doctest::Approx(0.0));
  for (double x : {0.0, 0.3, 0.9}) CHECK(analytic_saturation_ex13(Vec2(x, 0.4), 0.0) == initial_smooth(Vec2(x, 0.4)));
  // The profile moves with speed Y = x2 - x2^2.
  CHECK(analytic_saturation_ex13(Vec2(0.25 + 0.3, 0.5), 1.0) == doctest::Approx(1.0 / 1.09));
  CHECK(analytic_saturation_ex13(Vec2(0.2, 0.5), 1.0) == 1.0);
}

}
