#pragma once

#include <lcg/coupling.hpp>

#include <string>
#include <vector>

namespace lcg {

/// How a nodal saturation is read as a function on the domain.
/// Interpolant: the P_k Lagrange interpolant of the dof values.
/// PiecewiseConstant: S_z on all of C^z.
enum class SaturationNorm : std::uint8_t { Interpolant, PiecewiseConstant };

/// Saturation field value at x under the given reading.
double evaluate_saturation(const SaturationField& S, const Discretization& d, const Vec2& x,
                           SaturationNorm mode = SaturationNorm::Interpolant);

/// L2 error against an analytic profile. Integrates over the fan triangles of
/// every dual piece, each split into 4^refine sub-triangles.
double l2_saturation_error(const SaturationField& S, const Discretization& d, const ScalarField& exact,
                           SaturationNorm mode = SaturationNorm::Interpolant, int refine = 1);

/// L2 difference against a reference on a nested finer dual mesh: the coarse
/// field is sampled at every fine dof and the squares are weighted by the fine
/// CV areas. Throws ErrorKind::Geometry when the meshes are not nested.
double l2_saturation_error(const SaturationField& S, const Discretization& d, const SaturationField& reference,
                           const Discretization& fine, SaturationNorm mode = SaturationNorm::Interpolant);

/// Control volume of d containing x (first match in local order on the element).
Index locate_cv(const Discretization& d, const Vec2& x);

/// H1 semi-norm error of p~ (or p_h) against an analytic gradient.
double h1_semi_error(const PressureField<Real>& p, const Discretization& d,
                     const std::function<Vec2(const Vec2&)>& exact_gradient, bool postprocessed = true);

/// H1 semi-norm error against the post-processed gradient of a solution on a
/// nested finer mesh, integrated over the fine elements.
double h1_semi_error(const PressureField<Real>& p, const Discretization& d, const PressureField<Real>& reference,
                     const Discretization& fine, bool postprocessed = true);

struct StudyLevel {
  int n = 0;
  Index ndof = 0;
  double h = 0.0;
  double error = 0.0;
};

struct ConvergenceStudy {
  std::string example, scheme, label;
  int order = 1;
  std::vector<StudyLevel> levels;
};

struct OrderFit {
  double order = 0.0;
  bool monotone = true;  ///< false flags a non-decreasing error somewhere
};

/// Least-squares slope of log(error) against log(h).
OrderFit convergence_order(const ConvergenceStudy& study);

}  // namespace lcg
