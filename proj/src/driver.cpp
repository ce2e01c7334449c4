#include <lcg/driver.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>

namespace lcg {

namespace {

std::ofstream open_output(const RunConfig& cfg, const std::string& file) {
  std::filesystem::create_directories(cfg.out);
  std::ofstream os(std::filesystem::path(cfg.out) / file);
  if (!os) throw Error(ErrorKind::Config, "cannot write " + (std::filesystem::path(cfg.out) / file).string());
  return os;
}

std::vector<double> to_double(const VectorX<Real>& v) {
  std::vector<double> out(static_cast<std::size_t>(v.size()));
  for (Index i = 0; i < v.size(); ++i) out[i] = static_cast<double>(v[i]);
  return out;
}

ConvergenceStudy make_study(const ProblemSpec& p, const std::string& scheme, int order, const std::string& label) {
  ConvergenceStudy s;
  s.example = p.name;
  s.scheme = scheme;
  s.order = order;
  s.label = label;
  return s;
}

}  // namespace

DarcyRun cmd_darcy(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  const auto p = registry(cfg.example);
  DarcyRun run{Discretization::build(cfg.n, cfg.order), {}, {}};
  const auto K = coefficient_field(p);
  run.solution = solve_darcy(run.disc, p, K);
  const PostprocessInputs in{run.disc.mesh, run.disc.dofs, run.disc.dual, K, p.q, p.g_N};
  run.lce = lce_report(run.disc.dofs, lce_raw<Real>(in, run.solution.pressure), run.solution.lce);
  log << "darcy " << p.name << " n=" << cfg.n << " k=" << cfg.order << " dofs=" << run.disc.dofs.size()
      << " cg_iterations=" << run.solution.pressure.iterations << '\n'
      << "  max interior LCE raw  " << run.lce.max_interior_raw << '\n'
      << "  max interior LCE post " << run.lce.max_interior_post << '\n'
      << "  max Dirichlet-CV LCE post " << run.lce.max_dirichlet_post << " (not asserted)\n"
      << "  max compatibility defect " << run.solution.report.max_compatibility_defect << '\n';
  if (!cfg.out.empty()) {
    auto csv = open_output(cfg, "lce.csv");
    write_lce_csv(csv, run.disc.dofs, run.lce.raw, run.lce.post);
    if (cfg.vtk) {
      auto vtk = open_output(cfg, "pressure.vtk");
      write_dof_field_vtk(vtk, run.disc.dofs, "pressure", to_double(run.solution.pressure.coeffs));
    }
  }
  if (cfg.gate_lce && !(run.solution.max_free_lce <= 1e-12))
    throw Error(ErrorKind::Conservation, "post-processed flux is not locally conservative");
  return run;
}

SimulateRun cmd_simulate(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  const auto p = registry(cfg.example);
  SimulateRun run{Discretization::build(cfg.n, cfg.order), {}, std::nullopt};
  const auto grid = cfg.time_grid(p);
  run.trajectory = time_march(p, grid, run.disc, cfg.march_options());
  const auto& tr = run.trajectory;
  log << "simulate " << p.name << " n=" << cfg.n << " k=" << cfg.order << " scheme=" << to_string(cfg.scheme)
      << " T=" << grid.t_final << " pressure_solves=" << tr.pressure_solves << '\n'
      << "  S range [" << tr.min_s << ", " << tr.max_s << "]  max mass-balance residual " << tr.max_balance_residual
      << '\n';
  if (p.exact_saturation) {
    const double t = grid.t_final;
    run.l2_error = l2_saturation_error(tr.final, run.disc, [&](const Vec2& x) { return p.exact_saturation(x, t); });
    log << "  L2 error vs analytic " << *run.l2_error << '\n';
  }
  if (!cfg.out.empty()) {
    auto csv = open_output(cfg, "summary.csv");
    write_summary_csv(csv, tr.summary);
    if (cfg.vtk) {
      auto vtk = open_output(cfg, "saturation_final.vtk");
      write_dof_field_vtk(vtk, run.disc.dofs, "saturation", tr.final.values);
    }
    for (std::size_t i = 0; i < tr.snapshots.size(); ++i) {
      auto vtk = open_output(cfg, "saturation_" + std::to_string(i) + ".vtk");
      write_dof_field_vtk(vtk, run.disc.dofs, "saturation", tr.snapshots[i].values);
    }
  }
  return run;
}

std::vector<ConvergenceStudy> saturation_study(const ProblemSpec& p, const std::vector<int>& levels,
                                               const TimeGrid& grid, const MarchOptions& opt, int ref_n,
                                               std::ostream* log) {
  std::optional<Discretization> fine;
  SaturationField reference;
  if (!p.exact_saturation) {
    fine = Discretization::build(ref_n, 2);
    MarchOptions ro = opt;
    ro.scheme = Scheme::Limited;
    reference = time_march(p, grid, *fine, ro).final;
    if (log) *log << "reference: V2 limited n=" << ref_n << '\n';
  }
  std::vector<ConvergenceStudy> out;
  for (int k : {1, 2})
    for (Scheme s : {Scheme::Upwind, Scheme::Limited}) {
      auto study = make_study(p, to_string(s), k, std::string(to_string(s)) + "_v" + std::to_string(k));
      for (int n1 : levels) {
        const int n = n1 / k;
        const auto d = Discretization::build(n, k);
        MarchOptions o = opt;
        o.scheme = s;
        const auto tr = time_march(p, grid, d, o);
        const double err =
            fine ? l2_saturation_error(tr.final, d, reference, *fine)
                 : l2_saturation_error(tr.final, d, [&](const Vec2& x) { return p.exact_saturation(x, grid.t_final); });
        study.levels.push_back({n, d.dofs.size(), d.mesh.h, err});
        if (log) *log << "  " << study.label << " n=" << n << " n_dof=" << d.dofs.size() << " error=" << err << '\n';
      }
      out.push_back(std::move(study));
    }
  return out;
}

std::vector<ConvergenceStudy> h1_study(const ProblemSpec& p, const std::vector<int>& levels, int ref_n,
                                       std::ostream* log) {
  const auto fine = Discretization::build(ref_n, 2);
  const auto ref = solve_darcy(fine, p, coefficient_field(p));
  if (log) *log << "reference: V2 n=" << ref_n << " cg_iterations=" << ref.pressure.iterations << '\n';
  std::vector<ConvergenceStudy> out;
  for (int k : {1, 2}) {
    auto study = make_study(p, "-", k, "h1_v" + std::to_string(k));
    for (int n1 : levels) {
      const int n = n1 / k;
      const auto d = Discretization::build(n, k);
      const auto s = solve_darcy(d, p, coefficient_field(p));
      const double err = h1_semi_error(s.pressure, d, ref.pressure, fine);
      study.levels.push_back({n, d.dofs.size(), d.mesh.h, err});
      if (log) *log << "  " << study.label << " n=" << n << " n_dof=" << d.dofs.size() << " error=" << err << '\n';
    }
    out.push_back(std::move(study));
  }
  return out;
}

std::vector<ConvergenceStudy> pressure_study(const ProblemSpec& p, const std::vector<int>& levels, std::ostream* log) {
  if (!p.exact_pressure || !p.exact_gradient)
    throw Error(ErrorKind::Config, "example '" + p.name + "' has no analytic pressure");
  std::vector<ConvergenceStudy> out;
  for (int k : {1, 2}) {
    auto l2 = make_study(p, "-", k, "l2_v" + std::to_string(k));
    auto h1 = make_study(p, "-", k, "h1_v" + std::to_string(k));
    for (int n : levels) {
      const auto d = Discretization::build(n, k);
      const auto s = solve_darcy(d, p, coefficient_field(p));
      const auto e = pressure_errors<Real>(d.mesh, d.dofs, s.pressure, p.exact_pressure, p.exact_gradient);
      l2.levels.push_back({n, d.dofs.size(), d.mesh.h, e.l2});
      h1.levels.push_back({n, d.dofs.size(), d.mesh.h, e.h1_semi});
      if (log) *log << "  v" << k << " n=" << n << " l2=" << e.l2 << " h1=" << e.h1_semi << '\n';
    }
    out.push_back(std::move(l2));
    out.push_back(std::move(h1));
  }
  return out;
}

std::vector<ConvergenceStudy> cmd_study(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  const auto p = registry(cfg.example);
  const auto levels = cfg.levels.empty() ? std::vector<int>{8, 16, 32, 64} : cfg.levels;
  std::vector<ConvergenceStudy> studies;
  if (cfg.metric == "saturation")
    studies = saturation_study(p, levels, cfg.time_grid(p), cfg.march_options(), cfg.ref_n ? cfg.ref_n : 256, &log);
  else if (cfg.metric == "h1")
    studies = h1_study(p, levels, cfg.ref_n ? cfg.ref_n : 320, &log);
  else
    studies = pressure_study(p, levels, &log);
  for (const auto& s : studies) {
    const auto fit = convergence_order(s);
    log << s.label << " order (least squares) " << fit.order << (fit.monotone ? "" : "  [non-monotone]") << '\n';
  }
  if (!cfg.out.empty()) {
    auto csv = open_output(cfg, "convergence.csv");
    write_convergence_csv(csv, studies);
  }
  return studies;
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::Config: return 2;
    case ErrorKind::Conservation: return 4;
    case ErrorKind::Cfl: return 5;
    default: return 3;
  }
}

}  // namespace lcg
