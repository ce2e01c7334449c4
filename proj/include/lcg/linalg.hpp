#pragma once

#include <lcg/types.hpp>

namespace lcg {

template <class Scalar>
struct CgResult {
  VectorX<Scalar> x;
  Index iterations = 0;
  double relative_residual = 0.0;  ///< true ||b - A x|| / ||b|| at exit
};

/// Jacobi-preconditioned conjugate gradients for a symmetric positive definite
/// system. The true residual is re-checked on exit and the iteration restarted
/// from the current iterate until ||b - A x|| <= tol ||b||.
/// Throws NonConvergenceError when maxit iterations are exhausted.
template <class Scalar>
CgResult<Scalar> cg_solve(const SparseMatrix<Scalar>& A, const VectorX<Scalar>& b, double tol = 1e-12,
                          Index maxit = 100000);

/// Solves the singular elemental system A alpha = beta whose kernel and
/// left kernel are the constants, returning the zero-mean solution. The
/// system is augmented with a Lagrange multiplier for the mean constraint.
/// Throws CompatibilityError if the mean of beta is not negligible.
template <class Scalar>
VectorX<Scalar> solve_singular_neumann(const MatrixX<Scalar>& A, const VectorX<Scalar>& beta,
                                       double tol = 1e-11);

}  // namespace lcg
