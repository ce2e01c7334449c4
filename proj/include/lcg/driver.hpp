#pragma once

#include <lcg/io.hpp>

#include <iosfwd>
#include <optional>

namespace lcg {

struct DarcyRun {
  Discretization disc;
  DarcySolution solution;
  LceReport lce;
};

/// Pressure solve, post-processing and LCE report; writes lce.csv (and
/// pressure.vtk with cfg.vtk) into cfg.out when it is non-empty.
DarcyRun cmd_darcy(const RunConfig& cfg, std::ostream& log);

struct SimulateRun {
  Discretization disc;
  Trajectory trajectory;
  std::optional<double> l2_error;  ///< against the analytic saturation, if any
};

/// Full time march; writes summary.csv and, with cfg.vtk or snapshots, VTK fields.
SimulateRun cmd_simulate(const RunConfig& cfg, std::ostream& log);

/// Saturation L2 errors for upwind/limited on V1 (n) and V2 (n/2), against the
/// analytic profile if the example has one, else a V2 limited run at ref_n.
std::vector<ConvergenceStudy> saturation_study(const ProblemSpec& p, const std::vector<int>& levels,
                                               const TimeGrid& grid, const MarchOptions& opt, int ref_n,
                                               std::ostream* log = nullptr);

/// H1 semi-norm errors of p~ on V1 (n) and V2 (n/2) against a V2 solution at ref_n.
std::vector<ConvergenceStudy> h1_study(const ProblemSpec& p, const std::vector<int>& levels, int ref_n,
                                       std::ostream* log = nullptr);

/// L2 and H1 semi-norm errors of p_h against the analytic pressure, V1 and V2 on the same n.
std::vector<ConvergenceStudy> pressure_study(const ProblemSpec& p, const std::vector<int>& levels,
                                             std::ostream* log = nullptr);

/// Dispatches on cfg.metric; writes convergence.csv into cfg.out.
std::vector<ConvergenceStudy> cmd_study(const RunConfig& cfg, std::ostream& log);

/// 2 config, 3 solver, 4 conservation gate, 5 CFL.
int exit_code(const Error& e);

}  // namespace lcg
