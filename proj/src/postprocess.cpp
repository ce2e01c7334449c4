#include <lcg/linalg.hpp>
#include <lcg/postprocess.hpp>
#include <lcg/quadrature.hpp>

#include <cmath>

namespace lcg {

namespace {

template <class Scalar>
VectorX<Scalar> local_coeffs(const DofMap& dofs, const PressureField<Scalar>& p, Index e) {
  const auto ed = dofs.element(e);
  VectorX<Scalar> v(static_cast<Index>(ed.size()));
  for (std::size_t i = 0; i < ed.size(); ++i) v[static_cast<Index>(i)] = p.coeffs[ed[i]];
  return v;
}

// K grad(w) at a physical point of element e, w given by local coefficients.
template <class Scalar>
Point2<Scalar> k_grad(const PostprocessInputs& in, Index e, const VectorX<Scalar>& local, const Point2<Scalar>& x) {
  const auto map = element_map<Scalar>(in.mesh, e);
  const auto basis = reference_basis<Scalar>(in.dofs.order, map.to_reference(x));
  const Scalar kval = static_cast<Scalar>(in.K(e, x.template cast<double>()));
  return kval * (physical_gradients(map, basis) * local);
}

// Endpoints of an edge piece in lexicographic order, so that both elements
// sharing the edge integrate at bitwise identical points.
std::pair<Vec2, Vec2> canonical(const Vec2& a, const Vec2& b) {
  if (a.x() < b.x() || (a.x() == b.x() && a.y() < b.y())) return {a, b};
  return {b, a};
}

Vec2 edge_outward_normal(const TriMesh& mesh, Index e, int edge) {
  const auto& t = mesh.triangles[static_cast<std::size_t>(e)];
  const Vec2 d = mesh.vertices[t[(edge + 1) % 3]] - mesh.vertices[t[edge]];
  return Vec2(d.y(), -d.x()).normalized();
}

// Integral of -K grad(w).n over a segment, w given by local coefficients on e.
template <class Scalar>
Scalar segment_outflow(const PostprocessInputs& in, Index e, const VectorX<Scalar>& local, const CvSegment& s,
                       const Vec2& normal) {
  const auto& rule = segment_rule<Scalar>(kEdgeDegree);
  const Point2<Scalar> a = s.a.cast<Scalar>(), b = s.b.cast<Scalar>(), n = normal.cast<Scalar>();
  Scalar acc = 0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const Point2<Scalar> x = a + rule.points[q].x() * (b - a);
    acc -= rule.weights[q] * k_grad(in, e, local, x).dot(n);
  }
  return acc * static_cast<Scalar>(s.length);
}

}  // namespace

template <class Scalar>
MatrixX<Scalar> segment_basis_fluxes(const TriMesh& mesh, const DualMesh& dual, Index e, const CoefficientField& K) {
  const auto segs = dual.element_segments(e);
  const int nk = dual.local_count;
  const auto map = element_map<Scalar>(mesh, e);
  const auto& rule = segment_rule<Scalar>(kEdgeDegree);
  MatrixX<Scalar> sf = MatrixX<Scalar>::Zero(static_cast<Index>(segs.size()), nk);
  for (std::size_t s = 0; s < segs.size(); ++s) {
    const auto& seg = segs[s];
    const Point2<Scalar> a = seg.a.cast<Scalar>(), b = seg.b.cast<Scalar>(), n = seg.normal.cast<Scalar>();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Point2<Scalar> x = a + rule.points[q].x() * (b - a);
      const auto basis = reference_basis<Scalar>(dual.order, map.to_reference(x));
      const Scalar w = rule.weights[q] * static_cast<Scalar>(seg.length) *
                       static_cast<Scalar>(K(e, x.template cast<double>()));
      sf.row(static_cast<Index>(s)) += w * (n.transpose() * physical_gradients(map, basis));
    }
  }
  return sf;
}

template <class Scalar>
MatrixX<Scalar> elemental_matrix(const TriMesh& mesh, const DualMesh& dual, Index e, const CoefficientField& K) {
  const auto segs = dual.element_segments(e);
  const MatrixX<Scalar> sf = segment_basis_fluxes<Scalar>(mesh, dual, e, K);
  MatrixX<Scalar> A = MatrixX<Scalar>::Zero(dual.local_count, dual.local_count);
  for (std::size_t s = 0; s < segs.size(); ++s) {
    A.row(segs[s].local[0]) -= sf.row(static_cast<Index>(s));
    A.row(segs[s].local[1]) += sf.row(static_cast<Index>(s));
  }
  return A;
}

template <class Scalar>
ElementRhs<Scalar> elemental_rhs(const PostprocessInputs& in, const PressureField<Scalar>& p, Index e) {
  const int nk = in.dual.local_count;
  const auto map = element_map<Scalar>(in.mesh, e);
  const VectorX<Scalar> local = local_coeffs(in.dofs, p, e);

  ElementRhs<Scalar> r;
  r.piece_source = piece_source<Scalar>(in.mesh, in.dual, e, in.q);
  r.source = r.piece_source.sum();
  const VectorX<Scalar> load = element_load<Scalar>(in.mesh, in.dual, e, in.q);
  const VectorX<Scalar> a_term = element_stiffness<Scalar>(in.mesh, in.dofs.order, e, in.K) * local;

  // e_tau(p_h, I phi_xi - phi_xi)
  VectorX<Scalar> e_term = VectorX<Scalar>::Zero(nk);
  const auto& rule = segment_rule<Scalar>(kEdgeDegree);
  for (const auto& piece : in.dual.element_edge_pieces(e)) {
    const auto& nb = in.mesh.neighbors[static_cast<std::size_t>(e)][piece.edge];
    const Point2<Scalar> n = edge_outward_normal(in.mesh, e, piece.edge).cast<Scalar>();
    const auto [lo, hi] = canonical(piece.a, piece.b);
    const Point2<Scalar> a = lo.cast<Scalar>(), b = hi.cast<Scalar>();
    const Scalar len = (b - a).norm();
    VectorX<Scalar> nb_local;
    if (!nb.side) nb_local = local_coeffs(in.dofs, p, nb.element);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Point2<Scalar> x = a + rule.points[q].x() * (b - a);
      Scalar flux;
      if (!nb.side) {
        const Point2<Scalar> own = k_grad(in, e, local, x);
        const Point2<Scalar> other = k_grad(in, nb.element, nb_local, x);
        flux = ((own + other) / Scalar(2)).dot(n);
      } else if (is_dirichlet(*nb.side)) {
        flux = k_grad(in, e, local, x).dot(n);
      } else {
        flux = in.g_N ? -static_cast<Scalar>(in.g_N(x.template cast<double>(), *nb.side)) : Scalar(0);
      }
      const Scalar w = rule.weights[q] * len * flux;
      const auto basis = reference_basis<Scalar>(in.dofs.order, map.to_reference(x));
      e_term[piece.local] += w;
      e_term -= w * basis.values;
    }
  }

  r.beta = r.piece_source - load + a_term + e_term;
  r.boundary_data = load - a_term - e_term;
  return r;
}

template <class Scalar>
VectorX<Scalar> postprocess_element(const PostprocessInputs& in, const PressureField<Scalar>& p, Index e) {
  const MatrixX<Scalar> A = elemental_matrix<Scalar>(in.mesh, in.dual, e, in.K);
  const auto rhs = elemental_rhs<Scalar>(in, p, e);
  return solve_singular_neumann<Scalar>(A, rhs.beta);
}

template <class Scalar>
PostprocessReport postprocess(const PostprocessInputs& in, PressureField<Scalar>& p) {
  const int nk = in.dual.local_count;
  const Index ne = in.mesh.num_elements();
  PostprocessReport rep;
  p.post = VectorX<Scalar>::Zero(ne * nk);
  for (Index e = 0; e < ne; ++e) {
    const MatrixX<Scalar> A = elemental_matrix<Scalar>(in.mesh, in.dual, e, in.K);
    const auto rhs = elemental_rhs<Scalar>(in, p, e);
    const auto src = static_cast<double>(rhs.source);
    rep.max_compatibility_defect =
        std::max(rep.max_compatibility_defect,
                 std::abs(static_cast<double>(rhs.compatibility_defect())) / (1.0 + std::abs(src)));
    rep.max_beta_sum = std::max(rep.max_beta_sum, std::abs(static_cast<double>(rhs.beta.sum())));
    const VectorX<Scalar> alpha = solve_singular_neumann<Scalar>(A, rhs.beta);
    rep.max_local_residual =
        std::max(rep.max_local_residual, static_cast<double>((A * alpha - rhs.beta).cwiseAbs().maxCoeff()));
    p.post.segment(e * nk, nk) = alpha;
  }
  return rep;
}

template <class Scalar>
FluxField extract_fluxes(const PostprocessInputs& in, const PressureField<Scalar>& p) {
  if (p.post.size() == 0) throw Error(ErrorKind::InvalidArgument, "extract_fluxes: field is not post-processed");
  const auto& dual = in.dual;
  const int nk = dual.local_count;
  const Index ndof = in.dofs.size();
  const int spe = dual.segments_per_element();

  FluxField out;
  out.segment_flux.resize(dual.segments.size());
  out.boundary_flux.assign(dual.boundary_segments.size(), 0.0);
  out.boundary_trace_flux.assign(dual.boundary_segments.size(), 0.0);
  VectorX<Scalar> net = VectorX<Scalar>::Zero(ndof);
  VectorX<Scalar> source = VectorX<Scalar>::Zero(ndof);
  std::vector<Scalar> bflux(dual.boundary_segments.size(), Scalar(0));

  for (Index e = 0; e < in.mesh.num_elements(); ++e) {
    const VectorX<Scalar> alpha = p.post.segment(e * nk, nk);
    const VectorX<Scalar> flux = -(segment_basis_fluxes<Scalar>(in.mesh, dual, e, in.K) * alpha);
    const auto segs = dual.element_segments(e);
    for (std::size_t s = 0; s < segs.size(); ++s) {
      const Scalar f = flux[static_cast<Index>(s)];
      out.segment_flux[static_cast<std::size_t>(e * spe) + s] = static_cast<double>(f);
      net[segs[s].dof[0]] += f;
      net[segs[s].dof[1]] -= f;
    }
    if (in.q) {
      const auto ed = in.dofs.element(e);
      const VectorX<Scalar> ps = piece_source<Scalar>(in.mesh, dual, e, in.q);
      for (int l = 0; l < nk; ++l) source[ed[l]] += ps[l];
    }
  }

  const auto& rule = segment_rule<Scalar>(kEdgeDegree);
  for (std::size_t s = 0; s < dual.boundary_segments.size(); ++s) {
    const auto& seg = dual.boundary_segments[s];
    const VectorX<Scalar> alpha = p.post.segment(seg.element * nk, nk);
    const Scalar trace = segment_outflow<Scalar>(in, seg.element, alpha, seg, seg.normal);
    out.boundary_trace_flux[s] = static_cast<double>(trace);
    if (!is_dirichlet(*seg.boundary)) {
      Scalar acc = 0;
      if (in.g_N) {
        const Point2<Scalar> a = seg.a.cast<Scalar>(), b = seg.b.cast<Scalar>();
        for (std::size_t q = 0; q < rule.size(); ++q) {
          const Point2<Scalar> x = a + rule.points[q].x() * (b - a);
          acc += rule.weights[q] * static_cast<Scalar>(in.g_N(x.template cast<double>(), *seg.boundary));
        }
        acc *= static_cast<Scalar>(seg.length);
      }
      bflux[s] = acc;
      net[seg.dof[0]] += acc;
    }
  }

  // Close the balance of control volumes touching Dirichlet sides.
  for (Index z = 0; z < ndof; ++z) {
    Scalar traced = 0, total_len = 0;
    bool any = false;
    for (Index s : dual.cv_boundary_segments[z]) {
      const auto& seg = dual.boundary_segments[s];
      if (!is_dirichlet(*seg.boundary)) continue;
      any = true;
      traced += static_cast<Scalar>(out.boundary_trace_flux[s]);
      total_len += static_cast<Scalar>(seg.length);
    }
    if (!any) continue;
    const Scalar closure = source[z] - net[z];
    for (Index s : dual.cv_boundary_segments[z]) {
      const auto& seg = dual.boundary_segments[s];
      if (!is_dirichlet(*seg.boundary)) continue;
      bflux[s] = static_cast<Scalar>(out.boundary_trace_flux[s]) +
                 (closure - traced) * static_cast<Scalar>(seg.length) / total_len;
    }
    net[z] += closure;
  }

  for (std::size_t s = 0; s < bflux.size(); ++s) out.boundary_flux[s] = static_cast<double>(bflux[s]);
  out.net_flux.resize(static_cast<std::size_t>(ndof));
  out.cv_source.resize(static_cast<std::size_t>(ndof));
  for (Index z = 0; z < ndof; ++z) {
    out.net_flux[z] = static_cast<double>(net[z]);
    out.cv_source[z] = static_cast<double>(source[z]);
  }
  return out;
}

template <class Scalar>
std::vector<double> lce_raw(const PostprocessInputs& in, const PressureField<Scalar>& p) {
  const auto& dual = in.dual;
  const int nk = dual.local_count;
  const Index ndof = in.dofs.size();
  VectorX<Scalar> lce = VectorX<Scalar>::Zero(ndof);
  for (Index e = 0; e < in.mesh.num_elements(); ++e) {
    const VectorX<Scalar> local = local_coeffs(in.dofs, p, e);
    for (const auto& seg : dual.element_segments(e)) {
      const Scalar f = segment_outflow<Scalar>(in, e, local, seg, seg.normal);
      lce[seg.dof[0]] += f;
      lce[seg.dof[1]] -= f;
    }
    if (in.q) {
      const auto ed = in.dofs.element(e);
      const VectorX<Scalar> ps = piece_source<Scalar>(in.mesh, dual, e, in.q);
      for (int l = 0; l < nk; ++l) lce[ed[l]] -= ps[l];
    }
  }
  for (const auto& seg : dual.boundary_segments)
    lce[seg.dof[0]] += segment_outflow<Scalar>(in, seg.element, local_coeffs(in.dofs, p, seg.element), seg, seg.normal);
  std::vector<double> out(static_cast<std::size_t>(ndof));
  for (Index z = 0; z < ndof; ++z) out[z] = static_cast<double>(lce[z]);
  return out;
}

std::vector<double> lce_post(const DualMesh& dual, const FluxField& flux) {
  const std::size_t ndof = flux.net_flux.size();
  std::vector<double> out(ndof);
  std::vector<char> dirichlet(ndof, 0);
  for (const auto& seg : dual.boundary_segments)
    if (is_dirichlet(*seg.boundary)) dirichlet[seg.dof[0]] = 1;
  for (std::size_t z = 0; z < ndof; ++z) {
    if (!dirichlet[z]) {
      out[z] = flux.net_flux[z] - flux.cv_source[z];
      continue;
    }
    long double acc = 0;
    for (const auto& ref : dual.cv_segments[z]) acc += ref.sign * flux.segment_flux[ref.segment];
    for (Index s : dual.cv_boundary_segments[z])
      acc += is_dirichlet(*dual.boundary_segments[s].boundary) ? flux.boundary_trace_flux[s] : flux.boundary_flux[s];
    out[z] = static_cast<double>(acc - flux.cv_source[z]);
  }
  return out;
}

LceReport lce_report(const DofMap& dofs, std::vector<double> raw, std::vector<double> post) {
  LceReport r;
  for (std::size_t z = 0; z < raw.size(); ++z) {
    const auto c = dofs.classes[z];
    if (c == DofClass::Interior) {
      r.max_interior_raw = std::max(r.max_interior_raw, std::abs(raw[z]));
      r.max_interior_post = std::max(r.max_interior_post, std::abs(post[z]));
    }
    if (c != DofClass::Dirichlet)
      r.max_free_post = std::max(r.max_free_post, std::abs(post[z]));
    else
      r.max_dirichlet_post = std::max(r.max_dirichlet_post, std::abs(post[z]));
  }
  r.raw = std::move(raw);
  r.post = std::move(post);
  return r;
}

#define LCG_INSTANTIATE(S)                                                                                  \
  template MatrixX<S> segment_basis_fluxes<S>(const TriMesh&, const DualMesh&, Index, const CoefficientField&); \
  template MatrixX<S> elemental_matrix<S>(const TriMesh&, const DualMesh&, Index, const CoefficientField&);  \
  template ElementRhs<S> elemental_rhs<S>(const PostprocessInputs&, const PressureField<S>&, Index);         \
  template VectorX<S> postprocess_element<S>(const PostprocessInputs&, const PressureField<S>&, Index);      \
  template PostprocessReport postprocess<S>(const PostprocessInputs&, PressureField<S>&);                   \
  template FluxField extract_fluxes<S>(const PostprocessInputs&, const PressureField<S>&);                  \
  template std::vector<double> lce_raw<S>(const PostprocessInputs&, const PressureField<S>&);

LCG_INSTANTIATE(double)
LCG_INSTANTIATE(long double)
#undef LCG_INSTANTIATE

}  // namespace lcg
