#include <lcg/diagnostics.hpp>

#include <doctest.h>

#include <map>
#include <sstream>

using namespace lcg;

TEST_SUITE("mesh") {

TEST_CASE("smallest mesh") {
  const auto m = build_structured_mesh(1);
  CHECK(m.num_vertices() == 4);
  CHECK(m.num_elements() == 2);
  CHECK(m.h == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(build_structured_mesh(0), Error);
}

TEST_CASE("triangulation invariants") {
  for (int n : {1, 3, 8}) {
    const auto m = build_structured_mesh(n);
    CHECK(m.num_vertices() == (n + 1) * (n + 1));
    CHECK(m.num_elements() == 2 * n * n);
    double total = 0.0;
    std::map<std::pair<Index, Index>, int> edge_count;
    for (Index e = 0; e < m.num_elements(); ++e) {
      CHECK(m.area(e) > 0.0);
      total += m.area(e);
      const auto& t = m.triangles[e];
      for (int i = 0; i < 3; ++i) {
        const Index a = t[i], b = t[(i + 1) % 3];
        ++edge_count[{std::min(a, b), std::max(a, b)}];
      }
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
    int boundary = 0;
    for (const auto& [edge, count] : edge_count) {
      CHECK(count <= 2);
      if (count == 1) ++boundary;
    }
    CHECK(boundary == 4 * n);
    CHECK(static_cast<int>(m.boundary_edges.size()) == 4 * n);
  }
}

TEST_CASE("neighbour table is symmetric") {
  const auto m = build_structured_mesh(4);
  for (Index e = 0; e < m.num_elements(); ++e)
    for (int i = 0; i < 3; ++i) {
      const auto& nb = m.neighbors[e][i];
      if (nb.element < 0) {
        CHECK(nb.side.has_value());
        continue;
      }
      CHECK(m.neighbors[nb.element][nb.edge].element == e);
    }
}

TEST_CASE("point location") {
  const auto m = build_structured_mesh(4);
  for (Index e = 0; e < m.num_elements(); ++e) CHECK(m.locate(m.centroid(e)) == e);
  CHECK_THROWS_AS(m.locate(Vec2(1.5, 0.5)), Error);
}

TEST_CASE("dof maps") {
  const auto m = build_structured_mesh(4);
  for (int k : {1, 2}) {
    const auto d = build_dof_map(m, k);
    CHECK(d.size() == (k * 4 + 1) * (k * 4 + 1));
    CHECK(d.local_count() == (k == 1 ? 3 : 6));
    for (Index z = 0; z < d.size(); ++z) {
      const Vec2 x = d.dof_coords[z];
      const bool lr = x.x() < 1e-13 || x.x() > 1 - 1e-13;
      const bool tb = x.y() < 1e-13 || x.y() > 1 - 1e-13;
      CHECK((d.classes[z] == DofClass::Dirichlet) == lr);
      CHECK((d.classes[z] == DofClass::NeumannBoundary) == (tb && !lr));
    }
  }
  CHECK_THROWS_AS(build_dof_map(m, 3), Error);
}

TEST_CASE("P2 midpoints sit on their edges") {
  const auto m = build_structured_mesh(3);
  const auto d = build_dof_map(m, 2);
  for (Index e = 0; e < m.num_elements(); ++e) {
    const auto loc = d.element(e);
    const auto& t = m.triangles[e];
    for (int i = 0; i < 3; ++i) {
      const Vec2 mid = 0.5 * (m.vertices[t[i]] + m.vertices[t[(i + 1) % 3]]);
      CHECK((d.dof_coords[loc[3 + i]] - mid).norm() < 1e-14);
      CHECK((d.dof_coords[loc[i]] - m.vertices[t[i]]).norm() < 1e-14);
    }
  }
}

TEST_CASE("dual pieces tile each element") {
  for (int k : {1, 2}) {
    const auto d = Discretization::build(4, k);
    const int nk = d.dofs.local_count();
    for (Index e = 0; e < d.mesh.num_elements(); ++e) {
      double sum = 0.0;
      for (int l = 0; l < nk; ++l) sum += d.dual.piece_area[e * nk + l];
      CHECK(std::abs(sum - d.mesh.area(e)) <= 1e-13 * d.mesh.area(e));
      if (k == 1)
        for (int l = 0; l < 3; ++l) CHECK(d.dual.piece_area[e * nk + l] == doctest::Approx(d.mesh.area(e) / 3));
      else
        for (int l = 0; l < 3; ++l) CHECK(d.dual.piece_area[e * nk + l] == doctest::Approx(d.mesh.area(e) / 12));
    }
    double total = 0.0;
    for (double a : d.dual.cv_area) total += a;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("P2 vertex pieces by sampling") {
  // Independent of the polygon construction: classify a fine lattice of
  // sample points by point-in-polygon and count per local index.
  const auto d = Discretization::build(1, 2);
  const int samples = 400;
  std::vector<int> hits(static_cast<std::size_t>(d.dofs.size()), 0);
  int inside_lower = 0;
  for (int i = 0; i < samples; ++i)
    for (int j = 0; j < samples; ++j) {
      const Vec2 x((i + 0.5) / samples, (j + 0.37) / samples);
      if (x.y() >= x.x()) continue;  // lower triangle only
      ++inside_lower;
      ++hits[static_cast<std::size_t>(locate_cv(d, x))];
    }
  const auto loc = d.dofs.element(0);
  for (int l = 0; l < 3; ++l)
    CHECK(static_cast<double>(hits[loc[l]]) / inside_lower == doctest::Approx(1.0 / 12).epsilon(0.02));
}

TEST_CASE("closed control volume around an interior vertex") {
  const auto d = Discretization::build(2, 1);
  const Index centre = 4;
  CHECK((d.dofs.dof_coords[centre] - Vec2(0.5, 0.5)).norm() < 1e-15);
  CHECK(d.dual.cv_boundary_segments[centre].empty());
  CHECK(d.dual.cv_area[centre] == doctest::Approx(0.25));
  CHECK(d.dual.cv_area.size() == 9);
}

TEST_CASE("segments are unit-normal and oriented") {
  for (int k : {1, 2}) {
    const auto d = Discretization::build(3, k);
    CHECK(static_cast<Index>(d.dual.segments.size()) == d.mesh.num_elements() * d.dual.segments_per_element());
    for (const auto& s : d.dual.segments) {
      CHECK(s.normal.norm() == doctest::Approx(1.0));
      CHECK(s.dof[0] != s.dof[1]);
      // The normal points away from the first dof's piece.
      const Vec2 mid = 0.5 * (s.a + s.b);
      const Vec2 toward = d.dofs.dof_coords[s.dof[1]] - d.dofs.dof_coords[s.dof[0]];
      CHECK(s.normal.dot(toward) > 0.0);
      CHECK(std::abs(s.normal.dot(s.b - s.a)) < 1e-14);
      (void)mid;
    }
    for (const auto& s : d.dual.boundary_segments) CHECK(s.boundary.has_value());
  }
}

TEST_CASE("vtk output") {
  const auto m = build_structured_mesh(2);
  std::vector<double> f(static_cast<std::size_t>(m.num_vertices()), 1.0);
  const std::pair<std::string, std::vector<double>> field{"s", f};
  std::ostringstream os;
  write_vtk(os, m, std::span(&field, 1));
  const auto text = os.str();
  CHECK(text.find("POINTS 9 double") != std::string::npos);
  CHECK(text.find("CELLS 8 32") != std::string::npos);
  CHECK(text.find("POINT_DATA 9") != std::string::npos);
  f.pop_back();
  const std::pair<std::string, std::vector<double>> bad{"s", f};
  std::ostringstream os2;
  CHECK_THROWS_AS(write_vtk(os2, m, std::span(&bad, 1)), Error);
}

}
