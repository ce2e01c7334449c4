#pragma once

#include <lcg/types.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lcg {

using ScalarField = std::function<double(const Vec2&)>;
using ScalarFunction = std::function<double(double)>;
/// Prescribed outward normal Darcy velocity v.n on a flux boundary side.
using FluxData = std::function<double(const Vec2&, Side)>;

enum class PhaseMode : std::uint8_t { Single, TwoPhase };

/// Everything that defines one flow scenario on the unit square.
struct ProblemSpec {
  std::string name;
  ScalarField kappa;
  bool kappa_homogeneous = false;
  ScalarFunction mobility;         ///< total mobility lambda(S)
  ScalarFunction fractional_flow;  ///< f(S), non-decreasing on [0, 1]
  ScalarFunction fractional_flow_derivative;
  ScalarField q;    ///< pressure source; empty means q = 0
  ScalarField q_w;  ///< saturation source; empty means q_w = 0
  ScalarField g_D;  ///< pressure on left/right
  FluxData g_N;     ///< v.n on top/bottom; empty means no flow
  ScalarField s0;
  double inflow_saturation = 1.0;  ///< saturation entering through the left side
  double t_final = 1.0;
  PhaseMode mode = PhaseMode::Single;

  std::function<double(const Vec2&, double)> exact_saturation;  ///< optional
  ScalarField exact_pressure;                                   ///< optional
  std::function<Vec2(const Vec2&)> exact_gradient;             ///< optional
};

// Permeabilities.
double kappa_osc(const Vec2& x);
/// Strongly heterogeneous field; throws ErrorKind::Coefficient if a
/// denominator falls to 1e-10 or below.
double kappa_heterog(const Vec2& x);
double kappa_smooth(const Vec2& x);

// Closures.
double total_mobility(double s);
double fractional_flow(double s);
double fractional_flow_derivative(double s);

// Initial saturations.
double initial_step(const Vec2& x);
double initial_smooth(const Vec2& x);

/// Characteristic solution for the separable smooth-permeability case with f(S) = S.
double analytic_saturation_ex13(const Vec2& x, double t);

/// Named scenarios: ex1-1 .. ex1-4, ex2-1 .. ex2-3, and the manufactured
/// pressure problems mms-linear, mms-quadratic, mms-sine.
ProblemSpec registry(const std::string& name);
std::vector<std::string> registry_names();

/// Largest |f'| on [0, 1], estimated on a uniform sample.
double max_flux_derivative(const ProblemSpec& p, int samples = 10001);

/// Checks f' >= 0 on 1001 samples of [0, 1].
bool flux_is_monotone(const ScalarFunction& f, int samples = 1001);

}  // namespace lcg
