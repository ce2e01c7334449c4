#pragma once

#include <lcg/postprocess.hpp>

#include <limits>
#include <optional>
#include <vector>

namespace lcg {

enum class Scheme : std::uint8_t { Upwind, Limited };

/// AsWritten subtracts half the smaller neighbour difference from the upwind
/// state; Minmod is the signed variant S_up + minmod(S_up - S_b, S_down - S_up) / 2.
enum class LimiterVariant : std::uint8_t { AsWritten, Minmod };

/// Piecewise-constant saturation on the control volumes.
struct SaturationField {
  std::vector<double> values;
  double time = 0.0;
};

inline constexpr Index kNoNeighbor = -1;

/// Aggregated flux between two adjacent control volumes, oriented from -> to.
struct Face {
  Index from = 0, to = 0;
  double velocity = 0.0;
  Index behind_from = kNoNeighbor;  ///< b(from; to)
  Index behind_to = kNoNeighbor;    ///< b(to; from)
};

/// Aggregated outward flux of one control volume through one boundary side.
struct BoundaryFace {
  Index cv = 0;
  Side side = Side::Left;
  double velocity = 0.0;
};

struct FaceGraph {
  std::vector<Face> faces;
  std::vector<BoundaryFace> boundary;
  std::vector<double> cv_area;
  std::vector<Vec2> cv_coords;
  std::vector<std::vector<Index>> cv_faces;

  Index num_cvs() const { return static_cast<Index>(cv_area.size()); }
  /// Flux from z to w (antisymmetric); 0 when not adjacent.
  double velocity(Index z, Index w) const;
  /// Control volumes sharing a face with z.
  std::vector<Index> neighbors(Index z) const;
};

/// Behind neighbour b(z; w): the neighbour m of z (m != w) maximizing the
/// cosine between x_z - x_w and x_m - x_z, ties to the smallest index.
/// Candidates must lie within 60 degrees of the backward direction
/// (cosine > 1/2); otherwise there is none.
FaceGraph build_face_graph(const DofMap& dofs, const DualMesh& dual, const FluxField& flux);

/// f(S_up) V for V > 0, f(S_down) V otherwise.
double upwind_face_flux(double V, double s_up, double s_down, const ScalarFunction& f);

double limited_state(std::optional<double> s_behind, double s_up, double s_down,
                     LimiterVariant variant = LimiterVariant::AsWritten);

struct TransportModel {
  ScalarFunction f;
  double flux_lipschitz = 1.0;     ///< max |f'| on [0, 1]
  double inflow_saturation = 1.0;  ///< saturation entering through the left side
  Scheme scheme = Scheme::Upwind;
  LimiterVariant limiter = LimiterVariant::AsWritten;
  bool strict_cfl = false;
  double cfl_safety = 0.9;

  /// Builds the model for a problem; throws if f' < 0 somewhere on [0, 1].
  static TransportModel from_problem(const ProblemSpec& p, Scheme scheme,
                                     LimiterVariant limiter = LimiterVariant::AsWritten);
};

/// Largest stable explicit step: safety * min_z |C_z| / (L_f * sum of
/// outgoing face velocities of z). The limited scheme halves it. Returns
/// +infinity when nothing flows out anywhere.
double cfl_dt(const FaceGraph& graph, const TransportModel& model);

struct StepReport {
  double mass_balance_residual = 0.0;  ///< relative
  double boundary_outflow = 0.0;       ///< net outward f(S) V through the boundary
};

/// One explicit step S^{new}_z = S_z - dt/|C_z| (sum outward flux - int_{C_z} q_w).
/// cv_source_w may be empty (q_w = 0).
SaturationField fvm_step(const SaturationField& S, const FaceGraph& graph, double dt,
                         const std::vector<double>& cv_source_w, const TransportModel& model,
                         StepReport* report = nullptr);

/// Integral of a saturation source over every control volume.
std::vector<double> cv_integrals(const TriMesh& mesh, const DualMesh& dual, const ScalarField& q_w);

}  // namespace lcg
