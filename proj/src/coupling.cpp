#include <lcg/coupling.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lcg {

Discretization Discretization::build(int n, int order) {
  Discretization d;
  d.mesh = build_structured_mesh(n);
  d.dofs = build_dof_map(d.mesh, order);
  d.dual = build_dual_mesh(d.mesh, d.dofs);
  return d;
}

DarcySolution solve_darcy(const Discretization& d, const ProblemSpec& p, const CoefficientField& K,
                          double solver_tolerance) {
  DarcySolution out;
  const auto sys = assemble<Real>(d.mesh, d.dofs, d.dual, K, p.q, p.g_D, p.g_N);
  out.pressure = solve_pressure<Real>(sys, solver_tolerance);
  const PostprocessInputs in{d.mesh, d.dofs, d.dual, K, p.q, p.g_N};
  out.report = postprocess<Real>(in, out.pressure);
  out.flux = extract_fluxes<Real>(in, out.pressure);
  out.lce = lce_post(d.dual, out.flux);
  for (Index z = 0; z < d.dofs.size(); ++z) {
    const double v = std::abs(out.lce[z]);
    if (d.dofs.classes[z] != DofClass::Dirichlet) out.max_free_lce = std::max(out.max_free_lce, v);
    if (d.dofs.classes[z] == DofClass::Interior) out.max_interior_lce = std::max(out.max_interior_lce, v);
  }
  return out;
}

void TimeGrid::validate() const {
  if (!(t_final > 0.0) || coarse_steps < 1 || fine_steps < 1 || iterations < 1)
    throw Error(ErrorKind::Config, "time grid needs T > 0 and counts >= 1");
}

std::vector<double> project_saturation_to_elements(const SaturationField& S, const TriMesh& mesh,
                                                   const DofMap& dofs, const DualMesh& dual) {
  const int nk = dofs.local_count();
  std::vector<double> out(static_cast<std::size_t>(mesh.num_elements()));
  for (Index e = 0; e < mesh.num_elements(); ++e) {
    const auto loc = dofs.element(e);
    double acc = 0.0, area = 0.0;
    for (int l = 0; l < nk; ++l) {
      const double a = dual.piece_area[static_cast<std::size_t>(e * nk + l)];
      acc += a * S.values[loc[l]];
      area += a;
    }
    out[e] = acc / area;
  }
  return out;
}

SaturationField initial_saturation(const ProblemSpec& p, const DofMap& dofs) {
  SaturationField s;
  s.values.resize(static_cast<std::size_t>(dofs.size()));
  for (Index z = 0; z < dofs.size(); ++z) s.values[z] = p.s0(dofs.dof_coords[z]);
  return s;
}

namespace {

std::string where(int n, int m, int r) {
  std::ostringstream os;
  os << " [coarse step " << n << ", iteration " << m;
  if (r >= 0) os << ", fine step " << r;
  os << "]";
  return os.str();
}

[[noreturn]] void rethrow_annotated(const std::string& at) {
  try {
    throw;
  } catch (const CflError& e) {
    throw CflError(e.what() + at, e.admissible_dt());
  } catch (const NonConvergenceError& e) {
    throw NonConvergenceError(e.what() + at, e.residual(), e.iterations());
  } catch (const CompatibilityError& e) {
    throw CompatibilityError(e.what() + at, e.defect());
  } catch (const Error& e) {
    throw Error(e.kind(), e.what() + at);
  }
}

double total_mass(const SaturationField& S, const DualMesh& dual) {
  long double m = 0.0L;
  for (std::size_t z = 0; z < S.values.size(); ++z) m += static_cast<long double>(dual.cv_area[z]) * S.values[z];
  return static_cast<double>(m);
}

}  // namespace

Trajectory time_march(const ProblemSpec& p, const TimeGrid& grid, const Discretization& d,
                      const MarchOptions& opt, const StepObserver& observer) {
  grid.validate();
  auto model = TransportModel::from_problem(p, opt.scheme, opt.limiter);
  model.strict_cfl = opt.strict_cfl;
  model.cfl_safety = opt.cfl_safety;
  const bool frozen = p.mode == PhaseMode::Single || !p.mobility;
  const auto source_w = cv_integrals(d.mesh, d.dual, p.q_w);

  Trajectory tr;
  tr.initial = initial_saturation(p, d.dofs);
  auto [lo, hi] = std::minmax_element(tr.initial.values.begin(), tr.initial.values.end());
  tr.min_s = *lo;
  tr.max_s = *hi;
  SaturationField S = tr.initial;
  std::vector<double> pending = opt.snapshot_times;
  std::sort(pending.begin(), pending.end());
  std::size_t next_snapshot = 0;

  bool have_pressure = false;
  const double dt_coarse = grid.coarse_dt();
  for (int n = 1; n <= grid.coarse_steps; ++n) {
    const double t0 = (n - 1) * dt_coarse;
    const SaturationField start = S;
    StepSummary row;
    row.step = n;
    for (int m = 1; m <= grid.iterations; ++m) {
      // Later iterations restart the interval with the updated mobility.
      SaturationField cur = start;
      try {
        if (!frozen || !have_pressure) {
          std::vector<double> mob;
          if (!frozen) {
            mob = project_saturation_to_elements(m == 1 ? start : S, d.mesh, d.dofs, d.dual);
            for (double& v : mob) v = p.mobility(v);
          }
          tr.last_pressure = solve_darcy(d, p, coefficient_field(p, std::move(mob)), opt.solver_tolerance);
          ++tr.pressure_solves;
          have_pressure = true;
          if (opt.gate_lce && !(tr.last_pressure.max_free_lce <= opt.lce_tolerance)) {
            std::ostringstream msg;
            msg << "post-processed flux violates local conservation: max LCE " << tr.last_pressure.max_free_lce;
            throw Error(ErrorKind::Conservation, msg.str());
          }
        }
      } catch (const Error&) {
        rethrow_annotated(where(n, m, -1));
      }
      const auto graph = build_face_graph(d.dofs, d.dual, tr.last_pressure.flux);
      int R = grid.fine_steps;
      if (opt.stepping == StepMode::Cfl) {
        const double adm = cfl_dt(graph, model);
        R = std::isfinite(adm) ? std::max(1, static_cast<int>(std::ceil(dt_coarse / adm * (1.0 - 1e-12)))) : 1;
      }
      const double dt = dt_coarse / R;
      row.fine_steps = R;
      row.max_balance_residual = 0.0;
      for (int r = 1; r <= R; ++r) {
        StepReport rep;
        try {
          cur = fvm_step(cur, graph, dt, source_w, model, &rep);
        } catch (const Error&) {
          rethrow_annotated(where(n, m, r));
        }
        cur.time = t0 + r * dt;
        row.max_balance_residual = std::max(row.max_balance_residual, rep.mass_balance_residual);
        auto [a, b] = std::minmax_element(cur.values.begin(), cur.values.end());
        tr.min_s = std::min(tr.min_s, *a);
        tr.max_s = std::max(tr.max_s, *b);
        if (m == grid.iterations) {
          while (next_snapshot < pending.size() && cur.time >= pending[next_snapshot] - 1e-12 * grid.t_final) {
            tr.snapshots.push_back(cur);
            ++next_snapshot;
          }
        }
      }
      S = std::move(cur);
    }
    S.time = n * dt_coarse;
    row.time = S.time;
    row.mass = total_mass(S, d.dual);
    auto [a, b] = std::minmax_element(S.values.begin(), S.values.end());
    row.min_s = *a;
    row.max_s = *b;
    row.max_interior_lce = tr.last_pressure.max_interior_lce;
    tr.max_balance_residual = std::max(tr.max_balance_residual, row.max_balance_residual);
    tr.summary.push_back(row);
    if (observer) observer(row, S);
  }
  tr.final = S;
  return tr;
}

}  // namespace lcg
