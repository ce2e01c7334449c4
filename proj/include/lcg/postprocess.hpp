#pragma once

#include <lcg/darcy.hpp>

#include <vector>

namespace lcg {

/// Integrals of K grad(phi_eta) . n over each element-interior dual segment
/// of element e, one row per segment (in element_segments order).
template <class Scalar>
MatrixX<Scalar> segment_basis_fluxes(const TriMesh& mesh, const DualMesh& dual, Index e, const CoefficientField& K);

/// Elemental matrix A_{xi eta} = b_tau(phi_eta, phi_xi). Constants span both
/// its kernel and its left kernel.
template <class Scalar>
MatrixX<Scalar> elemental_matrix(const TriMesh& mesh, const DualMesh& dual, Index e, const CoefficientField& K);

/// Right-hand side of the elemental Neumann problem.
template <class Scalar>
struct ElementRhs {
  VectorX<Scalar> beta;           ///< outflow through the interior segments of each piece
  VectorX<Scalar> boundary_data;  ///< outflow through (d tau) cap (d t_xi) for each piece
  VectorX<Scalar> piece_source;   ///< integral of q over each piece
  Scalar source = 0;              ///< integral of q over the element

  /// Sum of boundary data minus the element source; zero up to roundoff.
  Scalar compatibility_defect() const { return boundary_data.sum() - source; }
};

/// Inputs shared by every elemental problem of one pressure solve.
struct PostprocessInputs {
  const TriMesh& mesh;
  const DofMap& dofs;
  const DualMesh& dual;
  const CoefficientField& K;
  const ScalarField& q;
  const FluxData& g_N;
};

/// Averaged normal flux {K grad p_h} . n on element edges is one-sided on
/// Dirichlet edges and replaced by -g_N on flux edges.
template <class Scalar>
ElementRhs<Scalar> elemental_rhs(const PostprocessInputs& in, const PressureField<Scalar>& p, Index e);

/// Zero-mean solution alpha of the elemental Neumann problem on element e.
template <class Scalar>
VectorX<Scalar> postprocess_element(const PostprocessInputs& in, const PressureField<Scalar>& p, Index e);

struct PostprocessReport {
  double max_compatibility_defect = 0.0;  ///< max |sum boundary data - int_tau q| / (1 + |int_tau q|)
  double max_beta_sum = 0.0;              ///< max |sum beta|
  double max_local_residual = 0.0;        ///< max ||A alpha - beta||_inf
};

/// Post-processes every element and stores alpha in p.post.
template <class Scalar>
PostprocessReport postprocess(const PostprocessInputs& in, PressureField<Scalar>& p);

/// Segment-integrated conservative normal fluxes on the dual mesh.
struct FluxField {
  std::vector<double> segment_flux;         ///< dual.segments, along the stored normal
  std::vector<double> boundary_flux;        ///< dual.boundary_segments, outward
  std::vector<double> boundary_trace_flux;  ///< outward -K grad(p~).n on boundary segments
  std::vector<double> net_flux;             ///< per dof, outward through dC^z
  std::vector<double> cv_source;            ///< per dof, integral of q over C^z
};

/// Requires p.post. Boundary flux on flux sides is the prescribed data; on
/// Dirichlet sides it closes each control volume's balance and is split over
/// its segments in proportion to length around the traced values.
template <class Scalar>
FluxField extract_fluxes(const PostprocessInputs& in, const PressureField<Scalar>& p);

/// Per-dof local conservation errors.
struct LceReport {
  std::vector<double> raw;   ///< from the CGFEM gradient
  std::vector<double> post;  ///< from the post-processed gradient
  double max_interior_raw = 0.0;   ///< over dofs off the boundary
  double max_interior_post = 0.0;
  double max_free_post = 0.0;      ///< over all non-Dirichlet dofs
  double max_dirichlet_post = 0.0; ///< reported only
};

/// LCE of the raw CGFEM field with the given coefficient.
template <class Scalar>
std::vector<double> lce_raw(const PostprocessInputs& in, const PressureField<Scalar>& p);

/// LCE of the post-processed field; Dirichlet CVs use the traced boundary flux.
std::vector<double> lce_post(const DualMesh& dual, const FluxField& flux);

LceReport lce_report(const DofMap& dofs, std::vector<double> raw, std::vector<double> post);

}  // namespace lcg
