#include <lcg/coupling.hpp>

#include <doctest.h>

#include <algorithm>
#include <string>

using namespace lcg;

TEST_SUITE("coupling") {

TEST_CASE("element projection of saturation") {
  const auto d = Discretization::build(3, 2);
  SaturationField c;
  c.values.assign(static_cast<std::size_t>(d.dofs.size()), 0.42);
  for (double v : project_saturation_to_elements(c, d.mesh, d.dofs, d.dual)) CHECK(v == doctest::Approx(0.42));

  const auto d1 = Discretization::build(1, 1);
  SaturationField s;
  s.values.assign(4, 0.0);
  const Index v2 = d1.mesh.triangles[0][2];
  s.values[static_cast<std::size_t>(v2)] = 1.0;
  const auto proj = project_saturation_to_elements(s, d1.mesh, d1.dofs, d1.dual);
  CHECK(proj[0] == doctest::Approx(1.0 / 3));

  SaturationField r;
  for (Index z = 0; z < d.dofs.size(); ++z) r.values.push_back(d.dofs.dof_coords[z].x() * d.dofs.dof_coords[z].y());
  for (double v : project_saturation_to_elements(r, d.mesh, d.dofs, d.dual)) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("single-phase flow solves the pressure once") {
  const auto p = registry("ex1-1");
  const auto d = Discretization::build(8, 1);
  const TimeGrid grid{p.t_final, 5, 20, 2};
  MarchOptions opt;
  opt.stepping = StepMode::Cfl;
  const auto tr = time_march(p, grid, d, opt);
  CHECK(tr.pressure_solves == 1);
  CHECK(tr.summary.size() == 5);
  CHECK(tr.final.time == doctest::Approx(p.t_final));
  CHECK(tr.min_s >= 0.0);
  CHECK(tr.max_s <= 1.0 + 1e-14);
}

TEST_CASE("two-phase flow solves the pressure every iteration") {
  const auto p = registry("ex2-1");
  const auto d = Discretization::build(8, 1);
  const TimeGrid grid{p.t_final, 3, 1, 2};
  MarchOptions opt;
  opt.stepping = StepMode::Cfl;
  int calls = 0;
  const auto tr = time_march(p, grid, d, opt, [&](const StepSummary& row, const SaturationField&) {
    ++calls;
    CHECK(row.max_interior_lce <= 1e-12);
    CHECK(row.fine_steps >= 1);
  });
  CHECK(tr.pressure_solves == 6);
  CHECK(calls == 3);
  // mass increases while water enters and nothing has reached the outlet
  CHECK(tr.summary.back().mass > tr.summary.front().mass);
}

TEST_CASE("no water in, none appears") {
  auto p = registry("ex2-1");
  p.s0 = [](const Vec2&) { return 0.0; };
  p.inflow_saturation = 0.0;
  const auto d = Discretization::build(6, 2);
  MarchOptions opt;
  opt.stepping = StepMode::Cfl;
  const auto tr = time_march(p, {0.05, 2, 1, 1}, d, opt);
  for (double v : tr.final.values) CHECK(v == 0.0);
}

TEST_CASE("snapshots") {
  const auto p = registry("ex1-1");
  const auto d = Discretization::build(4, 1);
  MarchOptions opt;
  opt.snapshot_times = {0.5 * p.t_final, 0.1 * p.t_final};
  const auto tr = time_march(p, {p.t_final, 2, 100, 1}, d, opt);
  REQUIRE(tr.snapshots.size() == 2);
  CHECK(tr.snapshots[0].time == doctest::Approx(0.1 * p.t_final));
  CHECK(tr.snapshots[1].time == doctest::Approx(0.5 * p.t_final));
}

TEST_CASE("time grid validation") {
  CHECK_NOTHROW(TimeGrid{1.0, 1, 1, 1}.validate());
  for (const TimeGrid g : {TimeGrid{0.0, 1, 1, 1}, TimeGrid{1.0, 0, 1, 1}, TimeGrid{1.0, 1, 0, 1}, TimeGrid{1.0, 1, 1, 0}}) {
    try {
      g.validate();
      FAIL("expected a config error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Config);
    }
  }
}

TEST_CASE("errors carry the step indices") {
  const auto p = registry("ex1-1");
  const auto d = Discretization::build(16, 1);
  MarchOptions opt;
  opt.strict_cfl = true;
  try {
    time_march(p, {p.t_final, 2, 1, 1}, d, opt);
    FAIL("expected a CFL error");
  } catch (const CflError& e) {
    CHECK(std::string(e.what()).find("[coarse step 1, iteration 1, fine step 1]") != std::string::npos);
    CHECK(e.admissible_dt() > 0.0);
  }
  opt.strict_cfl = false;
  opt.lce_tolerance = 0.0;
  opt.stepping = StepMode::Cfl;
  try {
    time_march(p, {p.t_final, 1, 1, 1}, d, opt);
    FAIL("expected a conservation error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Conservation);
    CHECK(std::string(e.what()).find("[coarse step 1, iteration 1]") != std::string::npos);
  }
}

}
