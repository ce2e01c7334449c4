#pragma once

#include <lcg/diagnostics.hpp>

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace lcg {

/// Settings of one CLI run. Config files use the same key names as the flags.
struct RunConfig {
  std::string example = "ex1-1";
  int n = 32;
  int order = 1;
  Scheme scheme = Scheme::Upwind;
  LimiterVariant limiter = LimiterVariant::AsWritten;
  int nct = 1;
  int nft = 1000;
  int iters = 1;
  double tfinal = 0.0;  ///< <= 0 means the example's own final time
  std::string out = "out";
  bool cfl = false;     ///< CFL-derived fine steps instead of nft; fixed steps are checked strictly
  bool gate_lce = true;
  bool vtk = false;
  std::vector<double> snapshots;
  std::vector<int> levels;
  std::string metric = "saturation";  ///< study: saturation | h1 | pressure
  int ref_n = 0;                      ///< study reference resolution; 0 = default

  TimeGrid time_grid(const ProblemSpec& p) const;
  MarchOptions march_options() const;
};

/// Flat key = value lines; '#' and ';' start comments; [section] headers
/// prefix later keys as "section.key". Throws ErrorKind::Config on bad lines.
std::map<std::string, std::string> parse_ini(std::istream& is);

/// Applies recognised keys; unknown keys or unparsable values throw ErrorKind::Config.
void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& kv);

/// Rejects unknown examples and out-of-range counts with ErrorKind::Config.
void validate(const RunConfig& cfg);

Scheme parse_scheme(const std::string& s);
LimiterVariant parse_limiter(const std::string& s);
const char* to_string(Scheme s);
const char* to_string(LimiterVariant v);
const char* to_string(DofClass c);

/// dof id, x, y, class, lce_raw, lce_post
void write_lce_csv(std::ostream& os, const DofMap& dofs, const std::vector<double>& raw,
                   const std::vector<double>& post);

/// step, time, mass, min S, max S, max interior LCE
void write_summary_csv(std::ostream& os, const std::vector<StepSummary>& rows);

/// One column per study (errors by level) and a final row of fitted orders.
/// Studies are paired by level index; N_dof comes from the first study.
void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceStudy>& studies);

/// Dof values on the lattice mesh of spacing 1/(k n), whose vertices are the dofs.
void write_dof_field_vtk(std::ostream& os, const DofMap& dofs, const std::string& name,
                         const std::vector<double>& values);

}  // namespace lcg
