#include <lcg/darcy.hpp>
#include <lcg/linalg.hpp>
#include <lcg/quadrature.hpp>

#include <cmath>
#include <sstream>

namespace lcg {

namespace {

// Calls fn(x, weight) for the composite rule on the fan triangulation of
// every dual piece of element e; fn also receives the piece's local index.
template <class Scalar, class Fn>
void for_each_piece_point(const DualMesh& dual, Index e, int degree, Fn&& fn) {
  const auto& rule = triangle_rule<Scalar>(degree);
  const int nk = dual.local_count;
  for (int l = 0; l < nk; ++l) {
    for (const auto& poly : dual.pieces[static_cast<std::size_t>(e * nk + l)]) {
      for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
        const AffineMap<Scalar> sub(poly[0], poly[k], poly[k + 1]);
        for (std::size_t q = 0; q < rule.size(); ++q)
          fn(l, sub.to_physical(rule.points[q]), rule.weights[q] * sub.det);
      }
    }
  }
}

}  // namespace

template <class Scalar>
MatrixX<Scalar> element_stiffness(const TriMesh& mesh, int order, Index e, const CoefficientField& K) {
  const auto map = element_map<Scalar>(mesh, e);
  const auto& rule = triangle_rule<Scalar>(stiffness_degree(order, K.homogeneous));
  const int nk = (order + 1) * (order + 2) / 2;
  MatrixX<Scalar> ke = MatrixX<Scalar>::Zero(nk, nk);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const Point2<Scalar> xq = map.to_physical(rule.points[q]);
    const double kval = K(e, xq.template cast<double>());
    if (!(kval > 0.0) || !std::isfinite(kval)) {
      std::ostringstream msg;
      msg << "coefficient K = " << kval << " is not positive at (" << static_cast<double>(xq.x()) << ", "
          << static_cast<double>(xq.y()) << ") in element " << e;
      throw Error(ErrorKind::Coefficient, msg.str());
    }
    const auto basis = reference_basis<Scalar>(order, rule.points[q]);
    const auto grads = physical_gradients(map, basis);
    ke.noalias() += (rule.weights[q] * map.det * static_cast<Scalar>(kval)) * (grads.transpose() * grads);
  }
  return ke;
}

template <class Scalar>
VectorX<Scalar> element_load(const TriMesh& mesh, const DualMesh& dual, Index e, const ScalarField& q) {
  const int nk = dual.local_count;
  VectorX<Scalar> f = VectorX<Scalar>::Zero(nk);
  if (!q) return f;
  const auto map = element_map<Scalar>(mesh, e);
  for_each_piece_point<Scalar>(dual, e, 2 * dual.order + 2, [&](int, const Point2<Scalar>& x, Scalar w) {
    const auto basis = reference_basis<Scalar>(dual.order, map.to_reference(x));
    f += (w * static_cast<Scalar>(q(x.template cast<double>()))) * basis.values;
  });
  return f;
}

template <class Scalar>
VectorX<Scalar> piece_source(const TriMesh&, const DualMesh& dual, Index e, const ScalarField& q) {
  VectorX<Scalar> f = VectorX<Scalar>::Zero(dual.local_count);
  if (!q) return f;
  for_each_piece_point<Scalar>(dual, e, 2 * dual.order + 2, [&](int l, const Point2<Scalar>& x, Scalar w) {
    f[l] += w * static_cast<Scalar>(q(x.template cast<double>()));
  });
  return f;
}

template <class Scalar>
DarcySystem<Scalar> assemble(const TriMesh& mesh, const DofMap& dofs, const DualMesh& dual,
                             const CoefficientField& K, const ScalarField& q, const ScalarField& g_D,
                             const FluxData& g_N) {
  DarcySystem<Scalar> sys;
  sys.order = dofs.order;
  const Index ndof = dofs.size();
  sys.free_index.assign(static_cast<std::size_t>(ndof), -1);
  sys.lifting = VectorX<Scalar>::Zero(ndof);
  for (Index z = 0; z < ndof; ++z) {
    if (dofs.classes[z] == DofClass::Dirichlet) {
      sys.lifting[z] = static_cast<Scalar>(g_D(dofs.dof_coords[z]));
    } else {
      sys.free_index[z] = static_cast<Index>(sys.free_dofs.size());
      sys.free_dofs.push_back(z);
    }
  }
  const Index nfree = static_cast<Index>(sys.free_dofs.size());
  sys.b = VectorX<Scalar>::Zero(nfree);

  const int nk = dofs.local_count();
  std::vector<Eigen::Triplet<Scalar>> trip;
  trip.reserve(static_cast<std::size_t>(mesh.num_elements() * nk * nk));
  for (Index e = 0; e < mesh.num_elements(); ++e) {
    const auto ed = dofs.element(e);
    const MatrixX<Scalar> ke = element_stiffness<Scalar>(mesh, dofs.order, e, K);
    const VectorX<Scalar> fe = element_load<Scalar>(mesh, dual, e, q);
    for (int i = 0; i < nk; ++i) {
      const Index fi = sys.free_index[ed[i]];
      if (fi < 0) continue;
      sys.b[fi] += fe[i];
      for (int j = 0; j < nk; ++j) {
        const Index fj = sys.free_index[ed[j]];
        if (fj >= 0)
          trip.emplace_back(fi, fj, ke(i, j));
        else
          sys.b[fi] -= ke(i, j) * sys.lifting[ed[j]];
      }
    }
  }

  // -<g_N, phi> on flux boundaries, on the same edge pieces as the
  // post-processing edge terms.
  if (g_N) {
    const auto& rule = segment_rule<Scalar>(kEdgeDegree);
    for (const auto& seg : dual.boundary_segments) {
      if (is_dirichlet(*seg.boundary)) continue;
      const auto map = element_map<Scalar>(mesh, seg.element);
      const auto ed = dofs.element(seg.element);
      const Point2<Scalar> a = seg.a.cast<Scalar>(), b = seg.b.cast<Scalar>();
      const Scalar len = static_cast<Scalar>(seg.length);
      for (std::size_t qp = 0; qp < rule.size(); ++qp) {
        const Point2<Scalar> x = a + rule.points[qp].x() * (b - a);
        const auto basis = reference_basis<Scalar>(dofs.order, map.to_reference(x));
        const Scalar gn = static_cast<Scalar>(g_N(x.template cast<double>(), *seg.boundary));
        for (int i = 0; i < nk; ++i) {
          const Index fi = sys.free_index[ed[i]];
          if (fi >= 0) sys.b[fi] -= rule.weights[qp] * len * gn * basis.values[i];
        }
      }
    }
  }

  sys.A.resize(nfree, nfree);
  sys.A.setFromTriplets(trip.begin(), trip.end());
  sys.A.makeCompressed();
  return sys;
}

template <class Scalar>
Point2<Scalar> PressureField<Scalar>::gradient(const TriMesh& mesh, const DofMap& dofs, Index e,
                                               const Point2<Scalar>& ref, bool postprocessed) const {
  const auto map = element_map<Scalar>(mesh, e);
  const auto basis = reference_basis<Scalar>(order, ref);
  const auto grads = physical_gradients(map, basis);
  const int nk = dofs.local_count();
  VectorX<Scalar> local(nk);
  if (postprocessed) {
    if (post.size() == 0) throw Error(ErrorKind::InvalidArgument, "pressure field is not post-processed");
    local = post.segment(e * nk, nk);
  } else {
    const auto ed = dofs.element(e);
    for (int i = 0; i < nk; ++i) local[i] = coeffs[ed[i]];
  }
  return grads * local;
}

template <class Scalar>
PressureField<Scalar> solve_pressure(const DarcySystem<Scalar>& sys, double tol, Index maxit) {
  PressureField<Scalar> p;
  p.order = sys.order;
  p.coeffs = sys.lifting;
  const auto res = cg_solve<Scalar>(sys.A, sys.b, tol, maxit);
  for (std::size_t i = 0; i < sys.free_dofs.size(); ++i) p.coeffs[sys.free_dofs[i]] = res.x[static_cast<Index>(i)];
  p.iterations = res.iterations;
  p.relative_residual = res.relative_residual;
  return p;
}

CoefficientField coefficient_field(const ProblemSpec& p, std::vector<double> element_mobility) {
  CoefficientField K;
  K.kappa = p.kappa;
  K.homogeneous = p.kappa_homogeneous && element_mobility.empty();
  K.element_mobility = std::move(element_mobility);
  return K;
}

template <class Scalar>
PressureErrors pressure_errors(const TriMesh& mesh, const DofMap& dofs, const PressureField<Scalar>& p,
                               const ScalarField& exact, const std::function<Vec2(const Vec2&)>& grad) {
  const auto& rule = triangle_rule<double>(6);
  double l2 = 0.0, h1 = 0.0;
  const int nk = dofs.local_count();
  for (Index e = 0; e < mesh.num_elements(); ++e) {
    const auto map = element_map<double>(mesh, e);
    const auto ed = dofs.element(e);
    Eigen::VectorXd local(nk);
    for (int i = 0; i < nk; ++i) local[i] = static_cast<double>(p.coeffs[ed[i]]);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto basis = reference_basis<double>(dofs.order, rule.points[q]);
      const Vec2 x = map.to_physical(rule.points[q]);
      const double w = rule.weights[q] * map.det;
      const double diff = basis.values.dot(local) - exact(x);
      const Vec2 gdiff = physical_gradients(map, basis) * local - grad(x);
      l2 += w * diff * diff;
      h1 += w * gdiff.squaredNorm();
    }
  }
  return {std::sqrt(l2), std::sqrt(h1)};
}

#define LCG_INSTANTIATE(S)                                                                               \
  template MatrixX<S> element_stiffness<S>(const TriMesh&, int, Index, const CoefficientField&);         \
  template VectorX<S> element_load<S>(const TriMesh&, const DualMesh&, Index, const ScalarField&);       \
  template VectorX<S> piece_source<S>(const TriMesh&, const DualMesh&, Index, const ScalarField&);       \
  template DarcySystem<S> assemble<S>(const TriMesh&, const DofMap&, const DualMesh&,                    \
                                      const CoefficientField&, const ScalarField&, const ScalarField&,   \
                                      const FluxData&);                                                  \
  template struct PressureField<S>;                                                                      \
  template PressureField<S> solve_pressure<S>(const DarcySystem<S>&, double, Index);                     \
  template PressureErrors pressure_errors<S>(const TriMesh&, const DofMap&, const PressureField<S>&,     \
                                             const ScalarField&, const std::function<Vec2(const Vec2&)>&);

LCG_INSTANTIATE(double)
LCG_INSTANTIATE(long double)
#undef LCG_INSTANTIATE

}  // namespace lcg
