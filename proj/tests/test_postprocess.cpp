#include <lcg/coupling.hpp>

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>

using namespace lcg;

namespace {

// Lagrange basis gradients from a monomial Vandermonde solve at the element's
// dof coordinates; independent of the reference-element basis.
struct MonomialBasis {
  int order;
  Eigen::MatrixXd coeffs;  // column j: monomial coefficients of phi_j

  MonomialBasis(int k, const std::vector<Vec2>& nodes) : order(k) {
    const auto m = static_cast<Index>(nodes.size());
    Eigen::MatrixXd V(m, m);
    for (Index i = 0; i < m; ++i) V.row(i) = monomials(nodes[i]).transpose();
    coeffs = V.inverse();
  }
  Eigen::VectorXd monomials(const Vec2& x) const {
    Eigen::VectorXd v(order == 1 ? 3 : 6);
    if (order == 1) v << 1, x.x(), x.y();
    else v << 1, x.x(), x.y(), x.x() * x.x(), x.x() * x.y(), x.y() * x.y();
    return v;
  }
  Vec2 gradient(int j, const Vec2& x) const {
    const auto& c = coeffs.col(j);
    if (order == 1) return Vec2(c[1], c[2]);
    return Vec2(c[1] + 2 * c[3] * x.x() + c[4] * x.y(), c[2] + c[4] * x.x() + 2 * c[5] * x.y());
  }
};

}  // namespace

TEST_SUITE("postprocess") {

TEST_CASE("elemental matrix against brute-force segment integration") {
  auto p = registry("mms-linear");
  for (int k : {1, 2}) {
    const auto d = Discretization::build(1, k);
    const auto K = coefficient_field(p);
    for (Index e = 0; e < d.mesh.num_elements(); ++e) {
      const int nk = d.dofs.local_count();
      std::vector<Vec2> nodes;
      for (Index z : d.dofs.element(e)) nodes.push_back(d.dofs.dof_coords[z]);
      const MonomialBasis basis(k, nodes);
      Eigen::MatrixXd oracle = Eigen::MatrixXd::Zero(nk, nk);
      const int pieces = 2000;
      for (const auto& seg : d.dual.element_segments(e))
        for (int j = 0; j < nk; ++j) {
          double flux = 0.0;
          for (int i = 0; i < pieces; ++i) {
            const Vec2 x = seg.a + (i + 0.5) / pieces * (seg.b - seg.a);
            flux += basis.gradient(j, x).dot(seg.normal) * seg.length / pieces;
          }
          oracle(seg.local[0], j) -= flux;
          oracle(seg.local[1], j) += flux;
        }
      const auto A = elemental_matrix<double>(d.mesh, d.dual, e, K);
      CHECK((A - oracle).cwiseAbs().maxCoeff() < 1e-7);
      CHECK(A.rowwise().sum().cwiseAbs().maxCoeff() < 1e-13);
      CHECK(A.colwise().sum().cwiseAbs().maxCoeff() < 1e-13);
    }
  }
}

TEST_CASE("post-processing is exact for linear solutions") {
  const auto p = registry("mms-linear");
  for (int k : {1, 2}) {
    const auto d = Discretization::build(4, k);
    const auto s = solve_darcy(d, p, coefficient_field(p));
    for (Index e = 0; e < d.mesh.num_elements(); ++e) {
      const Point2<Real> c(Real(1) / 3, Real(1) / 3);
      const auto graw = s.pressure.gradient(d.mesh, d.dofs, e, c, false);
      const auto gpost = s.pressure.gradient(d.mesh, d.dofs, e, c, true);
      CHECK(static_cast<double>((graw - gpost).norm()) < 1e-11);
    }
    for (double v : s.lce) CHECK(std::abs(v) < 1e-13);
  }
}

TEST_CASE("compatibility and zero beta sum") {
  for (const char* name : {"ex1-1", "mms-sine"}) {
    const auto p = registry(name);
    for (int k : {1, 2}) {
      const auto d = Discretization::build(8, k);
      const auto K = coefficient_field(p);
      auto s = solve_darcy(d, p, K);
      const PostprocessInputs in{d.mesh, d.dofs, d.dual, K, p.q, p.g_N};
      for (Index e = 0; e < d.mesh.num_elements(); ++e) {
        const auto rhs = elemental_rhs<Real>(in, s.pressure, e);
        CHECK(std::abs(static_cast<double>(rhs.compatibility_defect())) <=
              1e-11 * (1.0 + std::abs(static_cast<double>(rhs.source))));
        CHECK(std::abs(static_cast<double>(rhs.beta.sum())) < 1e-12);
      }
      CHECK(s.report.max_local_residual < 1e-12);
    }
  }
}

TEST_CASE("uniform flow") {
  const auto p = registry("mms-linear");
  const auto d = Discretization::build(4, 1);
  const auto s = solve_darcy(d, p, coefficient_field(p));
  // Every control volume passes as much as it receives; the whole domain
  // passes unit flux from left to right.
  for (Index z = 0; z < d.dofs.size(); ++z) CHECK(std::abs(s.flux.net_flux[z]) < 1e-13);
  double left = 0.0, right = 0.0;
  for (std::size_t b = 0; b < d.dual.boundary_segments.size(); ++b) {
    const auto side = *d.dual.boundary_segments[b].boundary;
    if (side == Side::Left) left += s.flux.boundary_flux[b];
    if (side == Side::Right) right += s.flux.boundary_flux[b];
  }
  CHECK(left == doctest::Approx(-1.0));
  CHECK(right == doctest::Approx(1.0));
}

TEST_CASE("post-processed flux is conservative where raw is not") {
  const auto p = registry("ex1-2");
  for (int k : {1, 2}) {
    const auto d = Discretization::build(16, k);
    const auto K = coefficient_field(p);
    const auto s = solve_darcy(d, p, K);
    const PostprocessInputs in{d.mesh, d.dofs, d.dual, K, p.q, p.g_N};
    const auto rep = lce_report(d.dofs, lce_raw<Real>(in, s.pressure), s.lce);
    CHECK(rep.max_interior_raw > 1e-2);
    CHECK(rep.max_free_post <= 1e-12);
    CHECK(rep.raw.size() == static_cast<std::size_t>(d.dofs.size()));
  }
}

}
