#include <lcg/mesh.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>

namespace lcg {

namespace {

constexpr std::array<std::array<int, 3>, 1> kSubP1{{{0, 1, 2}}};
// Corner sub-triangles at v0, v1, v2, then the central one; local midpoint
// indices are 3 = m01, 4 = m12, 5 = m20.
constexpr std::array<std::array<int, 3>, 4> kSubP2{{{0, 3, 5}, {1, 4, 3}, {2, 5, 4}, {3, 4, 5}}};

Index cell_element(int n, int i, int j, bool upper) {
  return 2 * (static_cast<Index>(j) * n + i) + (upper ? 1 : 0);
}

Vec2 left_normal_outward(const Vec2& a, const Vec2& b) {
  const Vec2 d = b - a;
  return Vec2(d.y(), -d.x()).normalized();
}

}  // namespace

double TriMesh::area(Index e) const {
  const auto& t = triangles[static_cast<std::size_t>(e)];
  const Vec2 d1 = vertices[t[1]] - vertices[t[0]];
  const Vec2 d2 = vertices[t[2]] - vertices[t[0]];
  return 0.5 * (d1.x() * d2.y() - d1.y() * d2.x());
}

Vec2 TriMesh::centroid(Index e) const {
  const auto& t = triangles[static_cast<std::size_t>(e)];
  return (vertices[t[0]] + vertices[t[1]] + vertices[t[2]]) / 3.0;
}

Index TriMesh::locate(const Vec2& x) const {
  constexpr double tol = 1e-12;
  if (!(x.x() >= -tol && x.x() <= 1.0 + tol && x.y() >= -tol && x.y() <= 1.0 + tol))
    throw Error(ErrorKind::Geometry, "point location failed: point outside the unit square");
  const double sx = x.x() * n, sy = x.y() * n;
  const int i = std::clamp(static_cast<int>(std::floor(sx)), 0, n - 1);
  const int j = std::clamp(static_cast<int>(std::floor(sy)), 0, n - 1);
  const bool upper = (sy - j) > (sx - i);
  return cell_element(n, i, j, upper);
}

TriMesh build_structured_mesh(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "invalid resolution: n must be >= 1");
  TriMesh m;
  m.n = n;
  m.h = std::sqrt(2.0) / n;
  const Index nv = static_cast<Index>(n + 1) * (n + 1);
  m.vertices.reserve(static_cast<std::size_t>(nv));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      m.vertices.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n);

  auto vid = [n](int i, int j) { return static_cast<Index>(j) * (n + 1) + i; };
  const Index ne = 2 * static_cast<Index>(n) * n;
  m.triangles.resize(static_cast<std::size_t>(ne));
  m.neighbors.resize(static_cast<std::size_t>(ne));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Index lo = cell_element(n, i, j, false);
      const Index up = cell_element(n, i, j, true);
      m.triangles[lo] = {vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)};
      m.triangles[up] = {vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)};

      auto& nl = m.neighbors[lo];
      nl[0] = j > 0 ? EdgeNeighbor{cell_element(n, i, j - 1, true), 1, std::nullopt}
                    : EdgeNeighbor{-1, -1, Side::Bottom};
      nl[1] = i < n - 1 ? EdgeNeighbor{cell_element(n, i + 1, j, true), 2, std::nullopt}
                        : EdgeNeighbor{-1, -1, Side::Right};
      nl[2] = EdgeNeighbor{up, 0, std::nullopt};

      auto& nu = m.neighbors[up];
      nu[0] = EdgeNeighbor{lo, 2, std::nullopt};
      nu[1] = j < n - 1 ? EdgeNeighbor{cell_element(n, i, j + 1, false), 0, std::nullopt}
                        : EdgeNeighbor{-1, -1, Side::Top};
      nu[2] = i > 0 ? EdgeNeighbor{cell_element(n, i - 1, j, false), 1, std::nullopt}
                    : EdgeNeighbor{-1, -1, Side::Left};
    }
  }
  for (Index e = 0; e < ne; ++e)
    for (int k = 0; k < 3; ++k)
      if (const auto& nb = m.neighbors[e][k]; nb.side)
        m.boundary_edges.push_back({{m.triangles[e][k], m.triangles[e][(k + 1) % 3]}, *nb.side});
  return m;
}

DofMap build_dof_map(const TriMesh& mesh, int order) {
  if (order != 1 && order != 2)
    throw Error(ErrorKind::InvalidArgument, "unsupported polynomial order " + std::to_string(order));
  DofMap d;
  d.order = order;
  d.n = mesh.n;
  const Index lat = d.lattice_size();
  const double hl = 1.0 / (static_cast<double>(order) * mesh.n);
  d.dof_coords.reserve(static_cast<std::size_t>(lat * lat));
  d.classes.reserve(static_cast<std::size_t>(lat * lat));
  for (Index J = 0; J < lat; ++J) {
    for (Index I = 0; I < lat; ++I) {
      d.dof_coords.emplace_back(static_cast<double>(I) * hl, static_cast<double>(J) * hl);
      if (I == 0 || I == lat - 1)
        d.classes.push_back(DofClass::Dirichlet);
      else if (J == 0 || J == lat - 1)
        d.classes.push_back(DofClass::NeumannBoundary);
      else
        d.classes.push_back(DofClass::Interior);
    }
  }
  const int nk = d.local_count();
  d.elem_dofs.reserve(static_cast<std::size_t>(mesh.num_elements() * nk));
  const Index np1 = mesh.n + 1;
  auto lattice_of = [&](Index v) {
    return std::array<Index, 2>{order * (v % np1), order * (v / np1)};
  };
  for (const auto& t : mesh.triangles) {
    std::array<std::array<Index, 2>, 3> c{lattice_of(t[0]), lattice_of(t[1]), lattice_of(t[2])};
    for (int k = 0; k < 3; ++k) d.elem_dofs.push_back(c[k][1] * lat + c[k][0]);
    if (order == 2) {
      for (int k = 0; k < 3; ++k) {
        const auto& a = c[k];
        const auto& b = c[(k + 1) % 3];
        d.elem_dofs.push_back(((a[1] + b[1]) / 2) * lat + (a[0] + b[0]) / 2);
      }
    }
  }
  return d;
}

double polygon_area(const Polygon& poly) {
  double s = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % poly.size()];
    s += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * s;
}

std::span<const std::array<int, 3>> dual_subtriangles(int order) {
  if (order == 1) return kSubP1;
  return kSubP2;
}

DualMesh build_dual_mesh(const TriMesh& mesh, const DofMap& dofs) {
  DualMesh dm;
  dm.order = dofs.order;
  dm.local_count = dofs.local_count();
  const int nk = dm.local_count;
  const Index ne = mesh.num_elements();
  const Index ndof = dofs.size();

  dm.pieces.resize(static_cast<std::size_t>(ne * nk));
  dm.piece_area.assign(static_cast<std::size_t>(ne * nk), 0.0);
  dm.segments.reserve(static_cast<std::size_t>(ne * dm.segments_per_element()));
  dm.edge_pieces.reserve(static_cast<std::size_t>(ne * dm.edge_pieces_per_element()));
  dm.cv_segments.resize(static_cast<std::size_t>(ndof));
  dm.cv_boundary_segments.resize(static_cast<std::size_t>(ndof));
  dm.cv_pieces.resize(static_cast<std::size_t>(ndof));
  dm.cv_area.assign(static_cast<std::size_t>(ndof), 0.0);

  const auto subs = dual_subtriangles(dofs.order);
  for (Index e = 0; e < ne; ++e) {
    const auto ed = dofs.element(e);
    auto X = [&](int local) { return dofs.dof_coords[static_cast<std::size_t>(ed[local])]; };

    for (const auto& st : subs) {
      const Vec2 g = (X(st[0]) + X(st[1]) + X(st[2])) / 3.0;
      for (int k = 0; k < 3; ++k) {
        const int la = st[k], lb = st[(k + 1) % 3], lc = st[(k + 2) % 3];
        const Vec2 mab = 0.5 * (X(la) + X(lb));
        const Vec2 mca = 0.5 * (X(lc) + X(la));
        dm.pieces[e * nk + la].push_back(Polygon{X(la), mab, g, mca});

        CvSegment s;
        s.a = mab;
        s.b = g;
        s.length = (g - mab).norm();
        Vec2 nrm(-(g - mab).y(), (g - mab).x());
        nrm.normalize();
        if (nrm.dot(X(lb) - X(la)) < 0.0) nrm = -nrm;
        s.normal = nrm;
        s.element = e;
        s.local = {la, lb};
        s.dof = {ed[la], ed[lb]};
        dm.segments.push_back(s);
      }
    }

    for (int k = 0; k < 3; ++k) {
      const int l0 = k, l1 = (k + 1) % 3;
      const Vec2 a = X(l0), b = X(l1);
      std::vector<std::pair<std::array<Vec2, 2>, int>> parts;
      if (dofs.order == 1) {
        const Vec2 m = 0.5 * (a + b);
        parts = {{{a, m}, l0}, {{m, b}, l1}};
      } else {
        const Vec2 q1 = 0.75 * a + 0.25 * b, q3 = 0.25 * a + 0.75 * b;
        parts = {{{a, q1}, l0}, {{q1, q3}, 3 + k}, {{q3, b}, l1}};
      }
      const auto& nb = mesh.neighbors[e][k];
      for (const auto& [pts, loc] : parts) {
        dm.edge_pieces.push_back(EdgePiece{pts[0], pts[1], k, loc});
        if (nb.side) {
          CvSegment s;
          s.a = pts[0];
          s.b = pts[1];
          s.length = (pts[1] - pts[0]).norm();
          s.normal = left_normal_outward(a, b);
          s.element = e;
          s.local = {loc, -1};
          s.dof = {ed[loc], -1};
          s.boundary = nb.side;
          dm.boundary_segments.push_back(s);
        }
      }
    }

    for (int l = 0; l < nk; ++l) {
      double area = 0.0;
      for (const auto& p : dm.pieces[e * nk + l]) area += polygon_area(p);
      dm.piece_area[e * nk + l] = area;
      dm.cv_area[ed[l]] += area;
      dm.cv_pieces[ed[l]].emplace_back(e, l);
    }
  }

  for (Index s = 0; s < static_cast<Index>(dm.segments.size()); ++s) {
    const auto& seg = dm.segments[s];
    dm.cv_segments[seg.dof[0]].push_back({s, +1.0});
    dm.cv_segments[seg.dof[1]].push_back({s, -1.0});
  }
  for (Index s = 0; s < static_cast<Index>(dm.boundary_segments.size()); ++s)
    dm.cv_boundary_segments[dm.boundary_segments[s].dof[0]].push_back(s);
  return dm;
}

void write_vtk(std::ostream& os, const TriMesh& mesh,
               std::span<const std::pair<std::string, std::vector<double>>> point_fields) {
  os << "# vtk DataFile Version 3.0\nlcg mesh\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << mesh.num_vertices() << " double\n";
  os.precision(17);
  for (const auto& v : mesh.vertices) os << v.x() << ' ' << v.y() << " 0\n";
  os << "CELLS " << mesh.num_elements() << ' ' << 4 * mesh.num_elements() << '\n';
  for (const auto& t : mesh.triangles) os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  os << "CELL_TYPES " << mesh.num_elements() << '\n';
  for (Index e = 0; e < mesh.num_elements(); ++e) os << "5\n";
  if (!point_fields.empty()) {
    os << "POINT_DATA " << mesh.num_vertices() << '\n';
    for (const auto& [name, values] : point_fields) {
      if (static_cast<Index>(values.size()) != mesh.num_vertices())
        throw Error(ErrorKind::InvalidArgument, "vtk field '" + name + "' has the wrong length");
      os << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
      for (double v : values) os << v << '\n';
    }
  }
}

}  // namespace lcg
