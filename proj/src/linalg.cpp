#include <lcg/linalg.hpp>

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>

#include <cmath>
#include <sstream>

namespace lcg {

template <class Scalar>
CgResult<Scalar> cg_solve(const SparseMatrix<Scalar>& A, const VectorX<Scalar>& b, double tol, Index maxit) {
  if (!(tol > 0.0 && tol < 1.0)) throw Error(ErrorKind::InvalidArgument, "cg tolerance must lie in (0, 1)");
  if (A.rows() != A.cols() || A.rows() != b.size())
    throw Error(ErrorKind::InvalidArgument, "cg_solve: dimension mismatch");

  CgResult<Scalar> out;
  out.x = VectorX<Scalar>::Zero(b.size());
  const Scalar bnorm = b.norm();
  if (bnorm == Scalar(0)) return out;

  Eigen::ConjugateGradient<SparseMatrix<Scalar>, Eigen::Lower | Eigen::Upper,
                           Eigen::DiagonalPreconditioner<Scalar>>
      cg;
  cg.setTolerance(static_cast<Scalar>(tol));
  cg.compute(A);

  Index used = 0;
  double rel = 1.0;
  // The recursive residual inside CG drifts from the true one near machine
  // precision; a handful of restarts recovers it.
  for (int restart = 0; restart < 8; ++restart) {
    cg.setMaxIterations(std::max<Index>(1, maxit - used));
    out.x = cg.solveWithGuess(b, out.x);
    used += cg.iterations();
    rel = static_cast<double>((b - A * out.x).norm() / bnorm);
    if (rel <= tol) break;
    if (used >= maxit || (cg.info() != Eigen::Success && cg.info() != Eigen::NoConvergence)) break;
  }
  out.iterations = used;
  out.relative_residual = rel;
  if (!(rel <= tol)) {
    std::ostringstream msg;
    msg << "conjugate gradients did not converge: relative residual " << rel << " after " << used
        << " iterations (tolerance " << tol << ")";
    throw NonConvergenceError(msg.str(), rel, used);
  }
  return out;
}

template <class Scalar>
VectorX<Scalar> solve_singular_neumann(const MatrixX<Scalar>& A, const VectorX<Scalar>& beta, double tol) {
  const Index n = A.rows();
  if (A.cols() != n || beta.size() != n)
    throw Error(ErrorKind::InvalidArgument, "solve_singular_neumann: dimension mismatch");

  const Scalar mean = beta.sum() / static_cast<Scalar>(n);
  const double scale = std::max(1.0, static_cast<double>(beta.cwiseAbs().maxCoeff()));
  const double defect = std::abs(static_cast<double>(mean));
  if (defect > tol * scale) {
    std::ostringstream msg;
    msg << "incompatible elemental right-hand side: mean " << defect;
    throw CompatibilityError(msg.str(), defect);
  }

  MatrixX<Scalar> aug = MatrixX<Scalar>::Zero(n + 1, n + 1);
  aug.topLeftCorner(n, n) = A;
  aug.block(0, n, n, 1).setOnes();
  aug.block(n, 0, 1, n).setOnes();
  VectorX<Scalar> rhs = VectorX<Scalar>::Zero(n + 1);
  rhs.head(n) = beta;
  const VectorX<Scalar> sol = aug.fullPivLu().solve(rhs);
  return sol.head(n);
}

template CgResult<double> cg_solve<double>(const SparseMatrix<double>&, const VectorX<double>&, double, Index);
template CgResult<long double> cg_solve<long double>(const SparseMatrix<long double>&,
                                                     const VectorX<long double>&, double, Index);
template VectorX<double> solve_singular_neumann<double>(const MatrixX<double>&, const VectorX<double>&, double);
template VectorX<long double> solve_singular_neumann<long double>(const MatrixX<long double>&,
                                                                  const VectorX<long double>&, double);

}  // namespace lcg
