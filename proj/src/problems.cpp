#include <lcg/problems.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace lcg {

namespace {

constexpr double pi = std::numbers::pi;

double guarded_inverse(double denom, const Vec2& x) {
  if (!(denom > 1e-10)) {
    std::ostringstream msg;
    msg << "permeability denominator " << denom << " <= 1e-10 at (" << x.x() << ", " << x.y() << ")";
    throw Error(ErrorKind::Coefficient, msg.str());
  }
  return 1.0 / denom;
}

double identity_flux(double s) { return s; }
double unit_derivative(double) { return 1.0; }
double unit_mobility(double) { return 1.0; }

ProblemSpec base(const std::string& name) {
  ProblemSpec p;
  p.name = name;
  p.mobility = unit_mobility;
  p.fractional_flow = fractional_flow;
  p.fractional_flow_derivative = fractional_flow_derivative;
  p.g_D = [](const Vec2& x) { return x.x() < 0.5 ? 1.0 : 0.0; };
  return p;
}

}  // namespace

double kappa_osc(const Vec2& x) {
  return 1.0 / (1.0 - 0.8 * std::sin(6.0 * pi * x.x())) / (1.0 - 0.8 * std::sin(6.0 * pi * x.y()));
}

double kappa_heterog(const Vec2& x) {
  const double x1 = x.x(), x2 = x.y();
  const double d1 = 0.25 - 0.999 * (x1 - x1 * x1) * std::sin(11.2 * pi * x1);
  const double d2 = 0.25 - 0.999 * (x2 - x2 * x2) * std::cos(5.2 * pi * x2);
  return guarded_inverse(d1, x) * guarded_inverse(d2, x);
}

double kappa_smooth(const Vec2& x) {
  return std::exp(1.0 - x.x()) * (x.y() - x.y() * x.y()) / (x.x() + 1.0);
}

double total_mobility(double s) { return s * s + (1.0 - s) * (1.0 - s) / 5.0; }

double fractional_flow(double s) { return s * s / total_mobility(s); }

double fractional_flow_derivative(double s) {
  // f = s^2 / lambda, lambda' = 2 s - 2 (1 - s) / 5
  const double lam = total_mobility(s);
  const double dlam = 2.0 * s - 0.4 * (1.0 - s);
  return (2.0 * s * lam - s * s * dlam) / (lam * lam);
}

double initial_step(const Vec2& x) { return x.x() <= 0.0 ? 1.0 : 0.0; }

double initial_smooth(const Vec2& x) { return x.x() < 0.0 ? 1.0 : 1.0 / (1.0 + x.x() * x.x()); }

double analytic_saturation_ex13(const Vec2& x, double t) {
  const double shift = (x.y() - x.y() * x.y()) * t;
  if (x.x() < shift) return 1.0;
  const double d = x.x() - shift;
  return 1.0 / (1.0 + d * d);
}

ProblemSpec registry(const std::string& name) {
  ProblemSpec p = base(name);
  if (name == "ex1-1" || name == "ex1-2" || name == "ex1-4" || name == "ex2-1" || name == "ex2-2" ||
      name == "ex2-3") {
    const bool heterog = name == "ex1-2" || name == "ex2-3";
    p.kappa = heterog ? ScalarField(kappa_heterog) : ScalarField(kappa_osc);
    const bool step = name == "ex1-1" || name == "ex1-2" || name == "ex2-1";
    p.s0 = step ? ScalarField(initial_step) : ScalarField(initial_smooth);
    if (name.starts_with("ex2")) {
      p.mode = PhaseMode::TwoPhase;
      p.mobility = total_mobility;
      p.t_final = name == "ex2-3" ? 0.02 : 0.1;
    } else {
      p.t_final = name == "ex1-2" ? 0.002 : 0.05;
    }
    return p;
  }
  if (name == "ex1-3") {
    p.kappa = kappa_smooth;
    p.fractional_flow = identity_flux;
    p.fractional_flow_derivative = unit_derivative;
    p.s0 = initial_smooth;
    p.t_final = 1.0;
    p.exact_saturation = analytic_saturation_ex13;
    // p = 1 - x1 exp(x1 - 1) solves the separable pressure equation exactly.
    p.exact_pressure = [](const Vec2& x) { return 1.0 - x.x() * std::exp(x.x() - 1.0); };
    p.exact_gradient = [](const Vec2& x) { return Vec2(-(1.0 + x.x()) * std::exp(x.x() - 1.0), 0.0); };
    return p;
  }
  if (name == "mms-linear") {
    p.kappa = [](const Vec2&) { return 1.0; };
    p.kappa_homogeneous = true;
    p.fractional_flow = identity_flux;
    p.fractional_flow_derivative = unit_derivative;
    p.s0 = initial_step;
    p.t_final = 0.1;
    p.g_D = [](const Vec2& x) { return 1.0 - x.x(); };
    p.exact_pressure = p.g_D;
    p.exact_gradient = [](const Vec2&) { return Vec2(-1.0, 0.0); };
    return p;
  }
  if (name == "mms-quadratic") {
    p.kappa = [](const Vec2&) { return 1.0; };
    p.kappa_homogeneous = true;
    p.s0 = initial_step;
    p.t_final = 0.1;
    p.q = [](const Vec2&) { return -4.0; };
    p.g_D = [](const Vec2& x) { return x.squaredNorm(); };
    // v = -grad p = (-2 x1, -2 x2)
    p.g_N = [](const Vec2& x, Side s) { return s == Side::Top ? -2.0 * x.y() : 2.0 * x.y(); };
    p.exact_pressure = p.g_D;
    p.exact_gradient = [](const Vec2& x) { return Vec2(2.0 * x.x(), 2.0 * x.y()); };
    return p;
  }
  if (name == "mms-sine") {
    p.kappa = [](const Vec2&) { return 1.0; };
    p.kappa_homogeneous = true;
    p.s0 = initial_step;
    p.t_final = 0.1;
    p.q = [](const Vec2& x) { return 2.0 * pi * pi * std::sin(pi * x.x()) * std::sin(pi * x.y()); };
    p.g_D = [](const Vec2&) { return 0.0; };
    p.g_N = [](const Vec2& x, Side s) {
      const double dpdy = pi * std::sin(pi * x.x()) * std::cos(pi * x.y());
      return s == Side::Top ? -dpdy : dpdy;
    };
    p.exact_pressure = [](const Vec2& x) { return std::sin(pi * x.x()) * std::sin(pi * x.y()); };
    p.exact_gradient = [](const Vec2& x) {
      return Vec2(pi * std::cos(pi * x.x()) * std::sin(pi * x.y()),
                  pi * std::sin(pi * x.x()) * std::cos(pi * x.y()));
    };
    return p;
  }
  throw Error(ErrorKind::Config, "unknown problem '" + name + "'");
}

std::vector<std::string> registry_names() {
  return {"ex1-1", "ex1-2", "ex1-3", "ex1-4", "ex2-1", "ex2-2", "ex2-3",
          "mms-linear", "mms-quadratic", "mms-sine"};
}

double max_flux_derivative(const ProblemSpec& p, int samples) {
  double lf = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double s = static_cast<double>(i) / (samples - 1);
    lf = std::max(lf, std::abs(p.fractional_flow_derivative(s)));
  }
  return lf;
}

bool flux_is_monotone(const ScalarFunction& f, int samples) {
  double prev = f(0.0);
  for (int i = 1; i < samples; ++i) {
    const double cur = f(static_cast<double>(i) / (samples - 1));
    if (cur < prev - 1e-14) return false;
    prev = cur;
  }
  return true;
}

}  // namespace lcg
