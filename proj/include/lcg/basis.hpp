#pragma once

#include <lcg/types.hpp>

#include <Eigen/Dense>

namespace lcg {

/// Values and reference gradients of the P1/P2 Lagrange basis at one point.
template <class Scalar>
struct BasisEval {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1, 0, 6, 1> values;
  Eigen::Matrix<Scalar, 2, Eigen::Dynamic, 0, 2, 6> grads;
};

/// Lagrange basis on the unit right triangle. `ref` holds the barycentric
/// coordinates (lambda_1, lambda_2); lambda_0 = 1 - lambda_1 - lambda_2.
/// Local ordering: vertices 0, 1, 2 then midpoints of (0,1), (1,2), (2,0).
template <class Scalar>
BasisEval<Scalar> reference_basis(int order, const Point2<Scalar>& ref) {
  const Scalar l1 = ref.x(), l2 = ref.y(), l0 = Scalar(1) - l1 - l2;
  // d(lambda_i)/d(s, t)
  const Point2<Scalar> g0(-1, -1), g1(1, 0), g2(0, 1);
  BasisEval<Scalar> b;
  if (order == 1) {
    b.values.resize(3);
    b.grads.resize(2, 3);
    b.values << l0, l1, l2;
    b.grads << g0, g1, g2;
    return b;
  }
  if (order != 2) throw Error(ErrorKind::InvalidArgument, "unsupported polynomial order");
  b.values.resize(6);
  b.grads.resize(2, 6);
  const Scalar two(2), four(4);
  b.values << l0 * (two * l0 - 1), l1 * (two * l1 - 1), l2 * (two * l2 - 1), four * l0 * l1,
      four * l1 * l2, four * l2 * l0;
  b.grads.col(0) = (four * l0 - 1) * g0;
  b.grads.col(1) = (four * l1 - 1) * g1;
  b.grads.col(2) = (four * l2 - 1) * g2;
  b.grads.col(3) = four * (l0 * g1 + l1 * g0);
  b.grads.col(4) = four * (l1 * g2 + l2 * g1);
  b.grads.col(5) = four * (l2 * g0 + l0 * g2);
  return b;
}

/// Affine map from the reference triangle onto a physical triangle.
template <class Scalar>
struct AffineMap {
  Point2<Scalar> origin;
  Eigen::Matrix<Scalar, 2, 2> jac;
  Eigen::Matrix<Scalar, 2, 2> inv_jac_t;
  Scalar det;

  AffineMap(const Vec2& x0, const Vec2& x1, const Vec2& x2)
      : origin(x0.cast<Scalar>()) {
    jac.col(0) = (x1 - x0).cast<Scalar>();
    jac.col(1) = (x2 - x0).cast<Scalar>();
    det = jac.determinant();
    if (!(det > Scalar(0))) throw Error(ErrorKind::Geometry, "degenerate or inverted element");
    inv_jac_t = jac.inverse().transpose();
  }

  Point2<Scalar> to_physical(const Point2<Scalar>& ref) const { return origin + jac * ref; }
  Point2<Scalar> to_reference(const Point2<Scalar>& x) const {
    return inv_jac_t.transpose() * (x - origin);
  }
  Scalar area() const { return det / Scalar(2); }
};

/// Physical basis gradients (2 x N_k) at a reference point.
template <class Scalar>
Eigen::Matrix<Scalar, 2, Eigen::Dynamic, 0, 2, 6> physical_gradients(const AffineMap<Scalar>& map,
                                                                     const BasisEval<Scalar>& b) {
  return map.inv_jac_t * b.grads;
}

}  // namespace lcg
