#include <lcg/transport.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

namespace lcg {

double FaceGraph::velocity(Index z, Index w) const {
  for (Index f : cv_faces[static_cast<std::size_t>(z)]) {
    const auto& face = faces[static_cast<std::size_t>(f)];
    if (face.from == z && face.to == w) return face.velocity;
    if (face.to == z && face.from == w) return -face.velocity;
  }
  return 0.0;
}

std::vector<Index> FaceGraph::neighbors(Index z) const {
  std::vector<Index> out;
  for (Index f : cv_faces[static_cast<std::size_t>(z)]) {
    const auto& face = faces[static_cast<std::size_t>(f)];
    out.push_back(face.from == z ? face.to : face.from);
  }
  return out;
}

namespace {

Index behind_neighbor(const FaceGraph& g, Index z, Index w) {
  const Vec2 back = g.cv_coords[z] - g.cv_coords[w];
  Index best = kNoNeighbor;
  double best_cos = 0.5;
  for (Index m : g.neighbors(z)) {
    if (m == w) continue;
    const Vec2 d = g.cv_coords[m] - g.cv_coords[z];
    const double c = back.dot(d) / (back.norm() * d.norm());
    if (c > best_cos + 1e-12 || (std::abs(c - best_cos) <= 1e-12 && best != kNoNeighbor && m < best)) {
      best = m;
      best_cos = c;
    }
  }
  return best;
}

}  // namespace

FaceGraph build_face_graph(const DofMap& dofs, const DualMesh& dual, const FluxField& flux) {
  FaceGraph g;
  const Index ncv = dofs.size();
  g.cv_area = dual.cv_area;
  g.cv_coords = dofs.dof_coords;
  g.cv_faces.resize(static_cast<std::size_t>(ncv));

  std::unordered_map<std::int64_t, Index> lookup;
  lookup.reserve(dual.segments.size());
  for (std::size_t s = 0; s < dual.segments.size(); ++s) {
    const auto& seg = dual.segments[s];
    const Index a = std::min(seg.dof[0], seg.dof[1]), b = std::max(seg.dof[0], seg.dof[1]);
    const std::int64_t key = static_cast<std::int64_t>(a) * ncv + b;
    auto [it, inserted] = lookup.try_emplace(key, static_cast<Index>(g.faces.size()));
    if (inserted) {
      g.faces.push_back(Face{a, b, 0.0, kNoNeighbor, kNoNeighbor});
      g.cv_faces[a].push_back(it->second);
      g.cv_faces[b].push_back(it->second);
    }
    const double v = flux.segment_flux[s];
    g.faces[static_cast<std::size_t>(it->second)].velocity += seg.dof[0] == a ? v : -v;
  }
  for (auto& face : g.faces) {
    face.behind_from = behind_neighbor(g, face.from, face.to);
    face.behind_to = behind_neighbor(g, face.to, face.from);
  }

  std::unordered_map<std::int64_t, Index> blookup;
  for (std::size_t s = 0; s < dual.boundary_segments.size(); ++s) {
    const auto& seg = dual.boundary_segments[s];
    const std::int64_t key = static_cast<std::int64_t>(seg.dof[0]) * 4 + static_cast<int>(*seg.boundary);
    auto [it, inserted] = blookup.try_emplace(key, static_cast<Index>(g.boundary.size()));
    if (inserted) g.boundary.push_back(BoundaryFace{seg.dof[0], *seg.boundary, 0.0});
    g.boundary[static_cast<std::size_t>(it->second)].velocity += flux.boundary_flux[s];
  }
  return g;
}

double upwind_face_flux(double V, double s_up, double s_down, const ScalarFunction& f) {
  if (V > 0.0) return f(s_up) * V;
  if (V < 0.0) return f(s_down) * V;
  return 0.0;
}

double limited_state(std::optional<double> s_behind, double s_up, double s_down, LimiterVariant variant) {
  if (!s_behind) return s_up;
  const double back = s_up - *s_behind, fwd = s_down - s_up;
  if (variant == LimiterVariant::Minmod) {
    if (back * fwd <= 0.0) return s_up;
    const double slope = std::abs(back) < std::abs(fwd) ? back : fwd;
    return s_up + 0.5 * slope;
  }
  return s_up - 0.5 * std::min(std::abs(back), std::abs(fwd));
}

TransportModel TransportModel::from_problem(const ProblemSpec& p, Scheme scheme, LimiterVariant limiter) {
  if (!flux_is_monotone(p.fractional_flow))
    throw Error(ErrorKind::InvalidArgument, "fractional flow must be non-decreasing on [0, 1]");
  TransportModel m;
  m.f = p.fractional_flow;
  m.flux_lipschitz = max_flux_derivative(p);
  m.inflow_saturation = p.inflow_saturation;
  m.scheme = scheme;
  m.limiter = limiter;
  return m;
}

double cfl_dt(const FaceGraph& g, const TransportModel& model) {
  std::vector<double> out(static_cast<std::size_t>(g.num_cvs()), 0.0);
  for (const auto& face : g.faces) {
    if (face.velocity > 0.0) out[face.from] += face.velocity;
    if (face.velocity < 0.0) out[face.to] -= face.velocity;
  }
  for (const auto& b : g.boundary)
    if (b.velocity > 0.0) out[b.cv] += b.velocity;
  double dt = std::numeric_limits<double>::infinity();
  for (Index z = 0; z < g.num_cvs(); ++z)
    if (out[z] > 0.0) dt = std::min(dt, g.cv_area[z] / (model.flux_lipschitz * out[z]));
  if (!std::isfinite(dt)) return dt;
  const double factor = model.scheme == Scheme::Limited ? 0.5 : 1.0;
  return model.cfl_safety * factor * dt;
}

SaturationField fvm_step(const SaturationField& S, const FaceGraph& g, double dt,
                         const std::vector<double>& cv_source_w, const TransportModel& model, StepReport* report) {
  if (model.strict_cfl) {
    const double adm = cfl_dt(g, model);
    if (dt > adm * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "time step " << dt << " violates the CFL bound " << adm;
      throw CflError(msg.str(), adm);
    }
  }
  const auto& s = S.values;
  auto state = [&](Index up, Index down, Index behind) {
    if (model.scheme == Scheme::Upwind) return s[up];
    const std::optional<double> b = behind == kNoNeighbor ? std::nullopt : std::optional<double>(s[behind]);
    return limited_state(b, s[up], s[down], model.limiter);
  };

  std::vector<double> outflow(s.size(), 0.0);
  for (const auto& face : g.faces) {
    double F = 0.0;
    if (face.velocity > 0.0)
      F = model.f(state(face.from, face.to, face.behind_from)) * face.velocity;
    else if (face.velocity < 0.0)
      F = model.f(state(face.to, face.from, face.behind_to)) * face.velocity;
    outflow[face.from] += F;
    outflow[face.to] -= F;
  }
  double bnd = 0.0, bnd_abs = 0.0;
  for (const auto& b : g.boundary) {
    double F = 0.0;
    if (b.velocity > 0.0) {
      F = model.f(s[b.cv]) * b.velocity;
    } else if (b.velocity < 0.0) {
      const double inflow = b.side == Side::Left ? model.inflow_saturation : s[b.cv];
      F = model.f(inflow) * b.velocity;
    }
    outflow[b.cv] += F;
    bnd += F;
    bnd_abs += std::abs(F);
  }

  SaturationField next;
  next.time = S.time + dt;
  next.values.resize(s.size());
  double src = 0.0, src_abs = 0.0;
  long double storage = 0.0L;
  for (std::size_t z = 0; z < s.size(); ++z) {
    const double qw = cv_source_w.empty() ? 0.0 : cv_source_w[z];
    next.values[z] = s[z] - dt / g.cv_area[z] * (outflow[z] - qw);
    storage += static_cast<long double>(g.cv_area[z]) * (next.values[z] - s[z]) / dt;
    src += qw;
    src_abs += std::abs(qw);
  }
  if (report) {
    const double resid = static_cast<double>(storage) + bnd - src;
    report->mass_balance_residual = std::abs(resid) / std::max(bnd_abs + src_abs, 1e-300);
    if (bnd_abs + src_abs == 0.0) report->mass_balance_residual = std::abs(resid);
    report->boundary_outflow = bnd;
  }
  return next;
}

std::vector<double> cv_integrals(const TriMesh& mesh, const DualMesh& dual, const ScalarField& q_w) {
  std::vector<double> out;
  if (!q_w) return out;
  const auto nk = static_cast<std::size_t>(dual.local_count);
  std::vector<double> per_piece(static_cast<std::size_t>(mesh.num_elements()) * nk);
  for (Index e = 0; e < mesh.num_elements(); ++e) {
    const auto ps = piece_source<double>(mesh, dual, e, q_w);
    for (std::size_t l = 0; l < nk; ++l) per_piece[static_cast<std::size_t>(e) * nk + l] = ps[static_cast<Index>(l)];
  }
  out.assign(dual.cv_area.size(), 0.0);
  for (std::size_t z = 0; z < out.size(); ++z)
    for (const auto& [e, l] : dual.cv_pieces[z]) out[z] += per_piece[static_cast<std::size_t>(e) * nk + static_cast<std::size_t>(l)];
  return out;
}

}  // namespace lcg
