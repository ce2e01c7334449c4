#include <lcg/diagnostics.hpp>
#include <lcg/quadrature.hpp>

#include <cmath>

namespace lcg {

namespace {

template <class Fn>
void integrate_triangle(const Vec2& a, const Vec2& b, const Vec2& c, int refine, const QuadRule<double>& rule, Fn&& fn) {
  if (refine > 0) {
    const Vec2 ab = 0.5 * (a + b), bc = 0.5 * (b + c), ca = 0.5 * (c + a);
    integrate_triangle(a, ab, ca, refine - 1, rule, fn);
    integrate_triangle(ab, b, bc, refine - 1, rule, fn);
    integrate_triangle(ca, bc, c, refine - 1, rule, fn);
    integrate_triangle(ab, bc, ca, refine - 1, rule, fn);
    return;
  }
  const double det = std::abs((b - a).x() * (c - a).y() - (b - a).y() * (c - a).x());
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const Vec2& r = rule.points[q];
    fn(a + r.x() * (b - a) + r.y() * (c - a), rule.weights[q] * det);
  }
}

bool inside(const Polygon& poly, const Vec2& x, double tol) {
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2 e = poly[(i + 1) % m] - poly[i], r = x - poly[i];
    if (e.x() * r.y() - e.y() * r.x() < -tol * e.norm()) return false;
  }
  return true;
}

void require_nested(const Discretization& coarse, const Discretization& fine) {
  if (fine.mesh.n % coarse.mesh.n != 0)
    throw Error(ErrorKind::Geometry, "reference mesh is not a refinement of the coarse mesh");
}

}  // namespace

double evaluate_saturation(const SaturationField& S, const Discretization& d, const Vec2& x, SaturationNorm mode) {
  if (mode == SaturationNorm::PiecewiseConstant) return S.values[locate_cv(d, x)];
  const Index e = d.mesh.locate(x);
  const auto map = element_map<double>(d.mesh, e);
  const auto basis = reference_basis<double>(d.dofs.order, map.to_reference(x));
  const auto loc = d.dofs.element(e);
  double v = 0.0;
  for (int l = 0; l < d.dofs.local_count(); ++l) v += basis.values[l] * S.values[loc[l]];
  return v;
}

double l2_saturation_error(const SaturationField& S, const Discretization& d, const ScalarField& exact,
                           SaturationNorm mode, int refine) {
  const auto& rule = triangle_rule<double>(6);
  const int nk = d.dofs.local_count();
  long double acc = 0.0L;
  for (Index e = 0; e < d.mesh.num_elements(); ++e) {
    const auto loc = d.dofs.element(e);
    const auto map = element_map<double>(d.mesh, e);
    for (int l = 0; l < nk; ++l) {
      const double s = S.values[loc[l]];
      for (const auto& poly : d.dual.pieces[static_cast<std::size_t>(e * nk + l)])
        for (std::size_t i = 1; i + 1 < poly.size(); ++i)
          integrate_triangle(poly[0], poly[i], poly[i + 1], refine, rule, [&](const Vec2& x, double w) {
            double sh = s;
            if (mode == SaturationNorm::Interpolant) {
              const auto basis = reference_basis<double>(d.dofs.order, map.to_reference(x));
              sh = 0.0;
              for (int j = 0; j < nk; ++j) sh += basis.values[j] * S.values[loc[j]];
            }
            const double diff = sh - exact(x);
            acc += w * diff * diff;
          });
    }
  }
  return std::sqrt(static_cast<double>(acc));
}

Index locate_cv(const Discretization& d, const Vec2& x) {
  const Index e = d.mesh.locate(x);
  const int nk = d.dofs.local_count();
  const double tol = 1e-12 * d.mesh.h;
  for (int l = 0; l < nk; ++l)
    for (const auto& poly : d.dual.pieces[static_cast<std::size_t>(e * nk + l)])
      if (inside(poly, x, tol)) return d.dofs.element(e)[l];
  throw Error(ErrorKind::Geometry, "point not covered by any control volume");
}

double l2_saturation_error(const SaturationField& S, const Discretization& d, const SaturationField& reference,
                           const Discretization& fine, SaturationNorm mode) {
  require_nested(d, fine);
  long double acc = 0.0L;
  for (Index z = 0; z < fine.dofs.size(); ++z) {
    const double diff = evaluate_saturation(S, d, fine.dofs.dof_coords[z], mode) - reference.values[z];
    acc += fine.dual.cv_area[z] * diff * diff;
  }
  return std::sqrt(static_cast<double>(acc));
}

double h1_semi_error(const PressureField<Real>& p, const Discretization& d,
                     const std::function<Vec2(const Vec2&)>& exact_gradient, bool postprocessed) {
  const auto& rule = triangle_rule<double>(6);
  long double acc = 0.0L;
  for (Index e = 0; e < d.mesh.num_elements(); ++e) {
    const auto map = element_map<double>(d.mesh, e);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Vec2 x = map.to_physical(rule.points[q]);
      const Vec2 g = p.gradient(d.mesh, d.dofs, e, rule.points[q].cast<Real>(), postprocessed).cast<double>();
      acc += rule.weights[q] * map.det * (g - exact_gradient(x)).squaredNorm();
    }
  }
  return std::sqrt(static_cast<double>(acc));
}

double h1_semi_error(const PressureField<Real>& p, const Discretization& d, const PressureField<Real>& reference,
                     const Discretization& fine, bool postprocessed) {
  require_nested(d, fine);
  const auto& rule = triangle_rule<double>(6);
  long double acc = 0.0L;
  for (Index f = 0; f < fine.mesh.num_elements(); ++f) {
    const auto fmap = element_map<double>(fine.mesh, f);
    const Index e = d.mesh.locate(fine.mesh.centroid(f));
    const auto cmap = element_map<double>(d.mesh, e);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Vec2 x = fmap.to_physical(rule.points[q]);
      const Vec2 gf = reference.gradient(fine.mesh, fine.dofs, f, rule.points[q].cast<Real>(), true).cast<double>();
      const Vec2 gc =
          p.gradient(d.mesh, d.dofs, e, cmap.to_reference(x).cast<Real>(), postprocessed).cast<double>();
      acc += rule.weights[q] * fmap.det * (gc - gf).squaredNorm();
    }
  }
  return std::sqrt(static_cast<double>(acc));
}

OrderFit convergence_order(const ConvergenceStudy& study) {
  const auto& lv = study.levels;
  if (lv.size() < 2) throw Error(ErrorKind::InvalidArgument, "convergence study needs at least two levels");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  OrderFit fit;
  for (std::size_t i = 0; i < lv.size(); ++i) {
    if (!(lv[i].error > 0.0) || !(lv[i].h > 0.0))
      throw Error(ErrorKind::InvalidArgument, "convergence study needs positive errors and mesh sizes");
    const double x = std::log(lv[i].h), y = std::log(lv[i].error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    if (i > 0 && !(lv[i].error < lv[i - 1].error)) fit.monotone = false;
  }
  const double m = static_cast<double>(lv.size());
  fit.order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return fit;
}

}  // namespace lcg
