#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lcg {

using Index = std::ptrdiff_t;

/// Working precision of the pressure pipeline (solve, post-processing).
using Real = long double;

template <class Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;
using Vec2 = Point2<double>;

template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Compressed row storage; the global Darcy operator lives here.
template <class Scalar>
using SparseMatrix = Eigen::SparseMatrix<Scalar, Eigen::RowMajor>;

/// Boundary side of the unit square.
enum class Side : std::uint8_t { Left, Right, Bottom, Top };

inline const char* to_string(Side s) {
  switch (s) {
    case Side::Left: return "left";
    case Side::Right: return "right";
    case Side::Bottom: return "bottom";
    case Side::Top: return "top";
  }
  return "?";
}

/// Left and right carry Dirichlet pressure data; top and bottom carry flux data.
inline bool is_dirichlet(Side s) { return s == Side::Left || s == Side::Right; }

// ---------------------------------------------------------------------------
// Errors. Every failure is an exception derived from lcg::Error; the kind
// drives the CLI exit code.

enum class ErrorKind : std::uint8_t {
  InvalidArgument,
  Config,
  Coefficient,
  Geometry,
  Solver,
  Compatibility,
  Conservation,
  Cfl,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, double residual, Index iterations)
      : Error(ErrorKind::Solver, what), residual_(residual), iterations_(iterations) {}
  double residual() const noexcept { return residual_; }
  Index iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  Index iterations_;
};

class CompatibilityError : public Error {
 public:
  CompatibilityError(const std::string& what, double defect)
      : Error(ErrorKind::Compatibility, what), defect_(defect) {}
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

class CflError : public Error {
 public:
  CflError(const std::string& what, double admissible_dt)
      : Error(ErrorKind::Cfl, what), admissible_dt_(admissible_dt) {}
  double admissible_dt() const noexcept { return admissible_dt_; }

 private:
  double admissible_dt_;
};

}  // namespace lcg
