#pragma once

#include <lcg/transport.hpp>

#include <functional>
#include <vector>

namespace lcg {

/// Mesh, dofs and dual mesh of one resolution.
struct Discretization {
  TriMesh mesh;
  DofMap dofs;
  DualMesh dual;

  static Discretization build(int n, int order);
};

/// Pressure solve, post-processing and conservative fluxes for one coefficient.
struct DarcySolution {
  PressureField<Real> pressure;
  FluxField flux;
  PostprocessReport report;
  std::vector<double> lce;       ///< post-processed LCE per dof
  double max_free_lce = 0.0;     ///< over non-Dirichlet dofs
  double max_interior_lce = 0.0; ///< over dofs off the boundary
};

DarcySolution solve_darcy(const Discretization& d, const ProblemSpec& p, const CoefficientField& K,
                          double solver_tolerance = 1e-16);

struct TimeGrid {
  double t_final = 1.0;
  int coarse_steps = 1;  ///< N_ct
  int fine_steps = 1;    ///< R per coarse step (fixed stepping)
  int iterations = 1;    ///< M_n

  void validate() const;
  double coarse_dt() const { return t_final / coarse_steps; }
};

enum class StepMode : std::uint8_t { Fixed, Cfl };

struct MarchOptions {
  Scheme scheme = Scheme::Upwind;
  LimiterVariant limiter = LimiterVariant::AsWritten;
  StepMode stepping = StepMode::Fixed;
  bool strict_cfl = false;
  double cfl_safety = 0.9;
  bool gate_lce = true;
  double lce_tolerance = 1e-12;
  double solver_tolerance = 1e-16;
  std::vector<double> snapshot_times;
};

/// Area-weighted average of the CV values overlapping each element.
std::vector<double> project_saturation_to_elements(const SaturationField& S, const TriMesh& mesh,
                                                   const DofMap& dofs, const DualMesh& dual);

/// S_0 evaluated at each dof coordinate.
SaturationField initial_saturation(const ProblemSpec& p, const DofMap& dofs);

struct StepSummary {
  int step = 0;
  double time = 0.0;
  double mass = 0.0;
  double min_s = 0.0, max_s = 0.0;
  double max_interior_lce = 0.0;
  double max_balance_residual = 0.0;
  int fine_steps = 0;
};

struct Trajectory {
  SaturationField initial;
  SaturationField final;
  DarcySolution last_pressure;
  std::vector<StepSummary> summary;
  std::vector<SaturationField> snapshots;
  int pressure_solves = 0;
  double max_balance_residual = 0.0;
  double min_s = 0.0, max_s = 0.0;  ///< over every fine step
};

using StepObserver = std::function<void(const StepSummary&, const SaturationField&)>;

/// Coarse steps of pressure solve with frozen mobility, post-processing and
/// fine explicit transport steps. Errors carry the (n, m, r) step indices.
Trajectory time_march(const ProblemSpec& p, const TimeGrid& grid, const Discretization& d,
                      const MarchOptions& opt, const StepObserver& observer = {});

}  // namespace lcg
