#include <lcg/linalg.hpp>

#include <doctest.h>

#include <vector>

using namespace lcg;

namespace {

// Plain Gaussian elimination with partial pivoting on a dense copy.
std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("identity converges in one iteration") {
  SparseMatrix<double> A(5, 5);
  A.setIdentity();
  VectorX<double> b(5);
  b << 1, -2, 3, 0.5, 7;
  const auto r = cg_solve(A, b);
  CHECK((r.x - b).norm() < 1e-14);
  CHECK(r.iterations <= 1);
}

TEST_CASE("5-point Poisson matches a dense solve") {
  const int n = 4, N = n * n;
  SparseMatrix<double> A(N, N);
  std::vector<Eigen::Triplet<double>> trip;
  std::vector<std::vector<double>> dense(N, std::vector<double>(N, 0.0));
  auto add = [&](int r, int c, double v) {
    trip.emplace_back(r, c, v);
    dense[r][c] += v;
  };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int r = j * n + i;
      add(r, r, 4.0);
      if (i > 0) add(r, r - 1, -1.0);
      if (i < n - 1) add(r, r + 1, -1.0);
      if (j > 0) add(r, r - n, -1.0);
      if (j < n - 1) add(r, r + n, -1.0);
    }
  A.setFromTriplets(trip.begin(), trip.end());
  const VectorX<double> b = VectorX<double>::Ones(N);
  const auto r = cg_solve(A, b);
  const auto ref = dense_solve(dense, std::vector<double>(N, 1.0));
  for (int i = 0; i < N; ++i) CHECK(r.x[i] == doctest::Approx(ref[i]).epsilon(1e-10));
  CHECK(r.relative_residual <= 1e-12);
}

TEST_CASE("non-convergence carries the residual") {
  const int N = 50;
  SparseMatrix<double> A(N, N);
  std::vector<Eigen::Triplet<double>> trip;
  for (int i = 0; i < N; ++i) {
    trip.emplace_back(i, i, 2.0);
    if (i > 0) trip.emplace_back(i, i - 1, -1.0);
    if (i < N - 1) trip.emplace_back(i, i + 1, -1.0);
  }
  A.setFromTriplets(trip.begin(), trip.end());
  const VectorX<double> b = VectorX<double>::LinSpaced(N, 0.0, 1.0);
  try {
    cg_solve(A, b, 1e-12, 2);
    FAIL("expected NonConvergenceError");
  } catch (const NonConvergenceError& e) {
    CHECK(e.residual() > 1e-12);
    CHECK(e.kind() == ErrorKind::Solver);
  }
  CHECK_THROWS_AS(cg_solve(A, b, 0.0), Error);
}

TEST_CASE("singular Neumann solve returns the zero-mean solution") {
  MatrixX<double> A(3, 3);
  A << 2, -1, -1, -1, 2, -1, -1, -1, 2;
  VectorX<double> beta(3);
  beta << 1, -0.25, -0.75;
  const auto x = solve_singular_neumann(A, beta);
  CHECK(std::abs(x.sum()) < 1e-14);
  CHECK((A * x - beta).norm() < 1e-14);
}

TEST_CASE("incompatible data is rejected") {
  MatrixX<double> A(3, 3);
  A << 2, -1, -1, -1, 2, -1, -1, -1, 2;
  const VectorX<double> beta = VectorX<double>::Constant(3, 1.0);
  try {
    solve_singular_neumann(A, beta);
    FAIL("expected CompatibilityError");
  } catch (const CompatibilityError& e) {
    CHECK(e.defect() == doctest::Approx(1.0));
  }
}

}
