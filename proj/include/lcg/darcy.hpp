#pragma once

#include <lcg/basis.hpp>
#include <lcg/mesh.hpp>
#include <lcg/problems.hpp>

#include <vector>

namespace lcg {

/// K(x) = lambda(S_tau) kappa(x), with one mobility value per element.
struct CoefficientField {
  ScalarField kappa;
  std::vector<double> element_mobility;  ///< empty means lambda = 1
  bool homogeneous = false;

  double operator()(Index e, const Vec2& x) const {
    const double lam = element_mobility.empty() ? 1.0 : element_mobility[static_cast<std::size_t>(e)];
    return lam * kappa(x);
  }
};

/// Stiffness quadrature degree: 2k for homogeneous K, 2k + 2 otherwise.
inline int stiffness_degree(int order, bool homogeneous) { return homogeneous ? 2 * order : 2 * order + 2; }

/// Degree used on each edge piece for flux-type boundary integrals.
inline constexpr int kEdgeDegree = 5;

template <class Scalar>
AffineMap<Scalar> element_map(const TriMesh& mesh, Index e) {
  const auto& t = mesh.triangles[static_cast<std::size_t>(e)];
  return AffineMap<Scalar>(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]);
}

/// Element stiffness a_tau(phi_eta, phi_xi); throws ErrorKind::Coefficient if
/// K is not positive at a quadrature point.
template <class Scalar>
MatrixX<Scalar> element_stiffness(const TriMesh& mesh, int order, Index e, const CoefficientField& K);

/// Element load (q, phi_xi)_tau, integrated on the sub-triangles of the dual
/// pieces so that it matches the piece integrals used in post-processing.
template <class Scalar>
VectorX<Scalar> element_load(const TriMesh& mesh, const DualMesh& dual, Index e, const ScalarField& q);

/// Integral of q over each dual piece of element e (same points as element_load).
template <class Scalar>
VectorX<Scalar> piece_source(const TriMesh& mesh, const DualMesh& dual, Index e, const ScalarField& q);

/// Global CGFEM system on the free (non-Dirichlet) dofs.
template <class Scalar>
struct DarcySystem {
  SparseMatrix<Scalar> A;
  VectorX<Scalar> b;
  std::vector<Index> free_index;  ///< per dof; -1 for Dirichlet dofs
  std::vector<Index> free_dofs;
  VectorX<Scalar> lifting;        ///< nodal interpolant of g_D (zero off Dirichlet dofs)
  int order = 1;
};

template <class Scalar>
DarcySystem<Scalar> assemble(const TriMesh& mesh, const DofMap& dofs, const DualMesh& dual,
                             const CoefficientField& K, const ScalarField& q, const ScalarField& g_D,
                             const FluxData& g_N);

template <class Scalar>
struct PressureField {
  int order = 1;
  VectorX<Scalar> coeffs;  ///< nodal values over all dofs
  VectorX<Scalar> post;    ///< post-processed alpha, flat N_k per element; empty until filled
  Index iterations = 0;
  double relative_residual = 0.0;

  /// Physical gradient of p_h (raw) or p~ (post) on element e at reference point ref.
  Point2<Scalar> gradient(const TriMesh& mesh, const DofMap& dofs, Index e, const Point2<Scalar>& ref,
                          bool postprocessed = false) const;
};

template <class Scalar>
PressureField<Scalar> solve_pressure(const DarcySystem<Scalar>& sys, double tol = 1e-12, Index maxit = 200000);

/// Pressure-equation inputs of a problem.
CoefficientField coefficient_field(const ProblemSpec& p, std::vector<double> element_mobility = {});

/// L2 and H1-seminorm errors of p_h against an analytic pressure.
struct PressureErrors {
  double l2 = 0.0;
  double h1_semi = 0.0;
};
template <class Scalar>
PressureErrors pressure_errors(const TriMesh& mesh, const DofMap& dofs, const PressureField<Scalar>& p,
                               const ScalarField& exact, const std::function<Vec2(const Vec2&)>& grad);

}  // namespace lcg
