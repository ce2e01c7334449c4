#include <lcg/diagnostics.hpp>

#include <doctest.h>

#include <cmath>

using namespace lcg;

namespace {

ConvergenceStudy study(std::initializer_list<double> errors) {
  ConvergenceStudy s;
  int n = 8;
  for (double e : errors) {
    s.levels.push_back({n, 0, 1.0 / n, e});
    n *= 2;
  }
  return s;
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("fitted orders") {
  CHECK(convergence_order(study({8e-2, 4e-2, 2e-2})).order == doctest::Approx(1.0));
  CHECK(convergence_order(study({1e-2, 2.5e-3})).order == doctest::Approx(2.0));
  const auto fit = convergence_order(study({1e-2, 2e-2, 1e-3}));
  CHECK_FALSE(fit.monotone);
  CHECK(convergence_order(study({1e-2, 5e-3})).monotone);
  CHECK_THROWS_AS(convergence_order(study({1e-2})), Error);
  CHECK_THROWS_AS(convergence_order(study({1e-2, 0.0})), Error);
}

TEST_CASE("saturation evaluation") {
  const auto d = Discretization::build(4, 2);
  SaturationField S;
  for (Index z = 0; z < d.dofs.size(); ++z) {
    const Vec2& x = d.dofs.dof_coords[z];
    S.values.push_back(x.x() * x.x() + x.y());
  }
  const Vec2 x(0.3, 0.71);
  CHECK(evaluate_saturation(S, d, x) == doctest::Approx(0.3 * 0.3 + 0.71));
  const Index z = locate_cv(d, x);
  CHECK(evaluate_saturation(S, d, x, SaturationNorm::PiecewiseConstant) == S.values[static_cast<std::size_t>(z)]);
  CHECK(l2_saturation_error(S, d, [](const Vec2& y) { return y.x() * y.x() + y.y(); }) < 1e-13);
  CHECK_THROWS_AS(locate_cv(d, Vec2(1.5, 0.5)), Error);
}

TEST_CASE("saturation error against nested references") {
  const auto coarse = Discretization::build(4, 1);
  const auto fine = Discretization::build(8, 1);
  SaturationField a, b;
  for (Index z = 0; z < coarse.dofs.size(); ++z) a.values.push_back(coarse.dofs.dof_coords[z].x());
  for (Index z = 0; z < fine.dofs.size(); ++z) b.values.push_back(fine.dofs.dof_coords[z].x());
  CHECK(l2_saturation_error(a, coarse, b, fine) < 1e-14);
  for (double& v : b.values) v += 0.5;
  CHECK(l2_saturation_error(a, coarse, b, fine) == doctest::Approx(0.5));
  const auto other = Discretization::build(6, 1);
  CHECK_THROWS_AS(l2_saturation_error(a, other, b, fine), Error);
}

TEST_CASE("pressure gradient errors") {
  const auto p = registry("mms-quadratic");
  const auto d = Discretization::build(4, 2);
  const auto s = solve_darcy(d, p, coefficient_field(p));
  CHECK(h1_semi_error(s.pressure, d, p.exact_gradient) < 1e-10);
  CHECK(h1_semi_error(s.pressure, d, s.pressure, d) < 1e-14);

  const auto q = registry("ex1-1");
  const auto c = Discretization::build(4, 1);
  const auto f = Discretization::build(8, 1);
  const auto sc = solve_darcy(c, q, coefficient_field(q));
  const auto sf = solve_darcy(f, q, coefficient_field(q));
  CHECK(h1_semi_error(sc.pressure, c, sf.pressure, f) > 0.0);
  const auto o = Discretization::build(6, 1);
  const auto so = solve_darcy(o, q, coefficient_field(q));
  CHECK_THROWS_AS(h1_semi_error(so.pressure, o, sf.pressure, f), Error);
}

TEST_CASE("smooth transport error at the coarsest level") {
  const auto p = registry("ex1-3");
  const auto d = Discretization::build(8, 1);
  MarchOptions opt;
  const auto tr = time_march(p, {p.t_final, 1, 1000, 1}, d, opt);
  const double err = l2_saturation_error(tr.final, d, [&](const Vec2& x) { return p.exact_saturation(x, p.t_final); });
  CHECK(err == doctest::Approx(1.488e-2).epsilon(0.15));
}

}
