#include <lcg/basis.hpp>
#include <lcg/quadrature.hpp>

#include <doctest.h>

#include <cmath>

using namespace lcg;

namespace {

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// int_T s^a t^b over the unit right triangle = a! b! / (a + b + 2)!
double monomial_exact(int a, int b) { return factorial(a) * factorial(b) / factorial(a + b + 2); }

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("x^2 y^2 over the reference triangle") {
  const auto& r = triangle_rule<double>(4);
  double v = 0.0;
  for (std::size_t q = 0; q < r.size(); ++q) v += r.weights[q] * std::pow(r.points[q].x(), 2) * std::pow(r.points[q].y(), 2);
  CHECK(v == doctest::Approx(1.0 / 180).epsilon(1e-14));
}

TEST_CASE("triangle rules integrate monomials up to their degree") {
  for (int deg = 0; deg <= 6; ++deg) {
    const auto& r = triangle_rule<long double>(deg);
    for (int a = 0; a <= deg; ++a)
      for (int b = 0; a + b <= deg; ++b) {
        long double v = 0;
        for (std::size_t q = 0; q < r.size(); ++q)
          v += r.weights[q] * std::pow(r.points[q].x(), a) * std::pow(r.points[q].y(), b);
        CHECK(static_cast<double>(v) == doctest::Approx(monomial_exact(a, b)).epsilon(1e-14));
      }
  }
  CHECK_THROWS_AS(triangle_rule<double>(7), Error);
}

TEST_CASE("segment rules") {
  for (int deg = 0; deg <= 9; ++deg) {
    const auto& r = segment_rule<double>(deg);
    for (int a = 0; a <= deg; ++a) {
      double v = 0.0;
      for (std::size_t q = 0; q < r.size(); ++q) v += r.weights[q] * std::pow(r.points[q].x(), a);
      CHECK(v == doctest::Approx(1.0 / (a + 1)).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(segment_rule<double>(10), Error);
  CHECK(quadrature<double>(QuadDomain::Segment, 3).size() == 2);
}

TEST_CASE("basis partition of unity and Kronecker property") {
  for (int k : {1, 2}) {
    const Point2<double> pt(0.21, 0.33);
    const auto b = reference_basis<double>(k, pt);
    CHECK(b.values.sum() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(b.grads.rowwise().sum().norm() < 1e-14);
    const std::vector<Point2<double>> nodes = {{0, 0}, {1, 0}, {0, 1}, {0.5, 0}, {0.5, 0.5}, {0, 0.5}};
    const int nk = k == 1 ? 3 : 6;
    for (int i = 0; i < nk; ++i) {
      const auto bi = reference_basis<double>(k, nodes[i]);
      for (int j = 0; j < nk; ++j) CHECK(bi.values[j] == doctest::Approx(i == j ? 1.0 : 0.0));
    }
  }
  CHECK_THROWS_AS(reference_basis<double>(3, Point2<double>(0, 0)), Error);
}

TEST_CASE("affine map") {
  const AffineMap<double> m(Vec2(0, 0), Vec2(2, 0), Vec2(0, 1));
  CHECK(m.area() == doctest::Approx(1.0));
  const Vec2 x = m.to_physical(Vec2(0.25, 0.5));
  CHECK((m.to_reference(x) - Vec2(0.25, 0.5)).norm() < 1e-15);
  CHECK_THROWS_AS(AffineMap<double>(Vec2(0, 0), Vec2(0, 1), Vec2(1, 0)), Error);
}

}
