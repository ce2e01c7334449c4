#include <lcg/quadrature.hpp>

#include <array>
#include <string>

namespace lcg {

namespace {

using LD = long double;

template <class Scalar>
void add3(QuadRule<Scalar>& r, LD a, LD w) {
  const LD b = 1.0L - 2.0L * a;
  for (auto [s, t] : std::array<std::array<LD, 2>, 3>{{{a, a}, {b, a}, {a, b}}}) {
    r.points.emplace_back(static_cast<Scalar>(s), static_cast<Scalar>(t));
    r.weights.push_back(static_cast<Scalar>(w));
  }
}

template <class Scalar>
void add6(QuadRule<Scalar>& r, LD a, LD b, LD w) {
  const LD c = 1.0L - a - b;
  for (auto [s, t] : std::array<std::array<LD, 2>, 6>{{{a, b}, {b, a}, {a, c}, {c, a}, {b, c}, {c, b}}}) {
    r.points.emplace_back(static_cast<Scalar>(s), static_cast<Scalar>(t));
    r.weights.push_back(static_cast<Scalar>(w));
  }
}

// Symmetric rules with positive weights (Strang-Fix / Dunavant families).
template <class Scalar>
QuadRule<Scalar> make_triangle(int degree) {
  QuadRule<Scalar> r;
  switch (degree) {
    case 0:
    case 1:
      r.points.emplace_back(static_cast<Scalar>(1.0L / 3.0L), static_cast<Scalar>(1.0L / 3.0L));
      r.weights.push_back(static_cast<Scalar>(0.5L));
      r.degree = 1;
      break;
    case 2:
      add3(r, 1.0L / 6.0L, 1.0L / 6.0L);
      r.degree = 2;
      break;
    case 3:  // the 4-point degree-3 rule has a negative weight
    case 4:
      add3(r, 0.091576213509770743460L, 0.054975871827660933819L);
      add3(r, 0.44594849091596488632L, 0.11169079483900573285L);
      r.degree = 4;
      break;
    case 5:
      r.points.emplace_back(static_cast<Scalar>(1.0L / 3.0L), static_cast<Scalar>(1.0L / 3.0L));
      r.weights.push_back(static_cast<Scalar>(0.1125L));
      add3(r, 0.10128650732345633880L, 0.062969590272413576298L);
      add3(r, 0.47014206410511508977L, 0.066197076394253090369L);
      r.degree = 5;
      break;
    case 6:
      add3(r, 0.063089014491502228340L, 0.025422453185103408460L);
      add3(r, 0.24928674517091042129L, 0.058393137863189683013L);
      add6(r, 0.053145049844816947353L, 0.31035245103378440542L, 0.041425537809186787597L);
      r.degree = 6;
      break;
    default:
      throw Error(ErrorKind::InvalidArgument,
                  "unsupported triangle quadrature degree " + std::to_string(degree));
  }
  return r;
}

// Gauss-Legendre on [-1, 1], positive half of each symmetric pair.
constexpr std::array<std::array<std::array<LD, 2>, 3>, 5> kGauss{{
    {{{0.0L, 2.0L}, {-1, 0}, {-1, 0}}},
    {{{0.57735026918962576450914878050196L, 1.0L}, {-1, 0}, {-1, 0}}},
    {{{0.0L, 0.88888888888888888888888888888889L},
      {0.77459666924148337703585307995648L, 0.55555555555555555555555555555556L},
      {-1, 0}}},
    {{{0.33998104358485626480266575910324L, 0.65214515486254614262693605077800L},
      {0.86113631159405257522394648889281L, 0.34785484513745385737306394922200L},
      {-1, 0}}},
    {{{0.0L, 0.56888888888888888888888888888889L},
      {0.53846931010568309103631442070021L, 0.47862867049936646804129151483564L},
      {0.90617984593866399279762687829939L, 0.23692688505618908751426404071992L}}},
}};

template <class Scalar>
QuadRule<Scalar> make_segment(int degree) {
  if (degree < 0 || degree > 9)
    throw Error(ErrorKind::InvalidArgument,
                "unsupported segment quadrature degree " + std::to_string(degree));
  const int npts = degree / 2 + 1;
  QuadRule<Scalar> r;
  r.degree = 2 * npts - 1;
  for (const auto& [x, w] : kGauss[static_cast<std::size_t>(npts - 1)]) {
    if (x < 0) continue;
    auto push = [&](LD xi) {
      r.points.emplace_back(static_cast<Scalar>(0.5L * (xi + 1.0L)), Scalar(0));
      r.weights.push_back(static_cast<Scalar>(0.5L * w));
    };
    push(-x);
    if (x > 0) push(x);
  }
  return r;
}

}  // namespace

template <class Scalar>
QuadRule<Scalar> quadrature(QuadDomain domain, int degree) {
  return domain == QuadDomain::Triangle ? make_triangle<Scalar>(degree) : make_segment<Scalar>(degree);
}

template <class Scalar>
const QuadRule<Scalar>& triangle_rule(int degree) {
  static const std::array<QuadRule<Scalar>, 7> rules = [] {
    std::array<QuadRule<Scalar>, 7> r;
    for (int d = 0; d <= 6; ++d) r[static_cast<std::size_t>(d)] = make_triangle<Scalar>(d);
    return r;
  }();
  if (degree < 0 || degree > 6)
    throw Error(ErrorKind::InvalidArgument,
                "unsupported triangle quadrature degree " + std::to_string(degree));
  return rules[static_cast<std::size_t>(degree)];
}

template <class Scalar>
const QuadRule<Scalar>& segment_rule(int degree) {
  static const std::array<QuadRule<Scalar>, 10> rules = [] {
    std::array<QuadRule<Scalar>, 10> r;
    for (int d = 0; d <= 9; ++d) r[static_cast<std::size_t>(d)] = make_segment<Scalar>(d);
    return r;
  }();
  if (degree < 0 || degree > 9)
    throw Error(ErrorKind::InvalidArgument,
                "unsupported segment quadrature degree " + std::to_string(degree));
  return rules[static_cast<std::size_t>(degree)];
}

template QuadRule<double> quadrature<double>(QuadDomain, int);
template QuadRule<long double> quadrature<long double>(QuadDomain, int);
template const QuadRule<double>& triangle_rule<double>(int);
template const QuadRule<long double>& triangle_rule<long double>(int);
template const QuadRule<double>& segment_rule<double>(int);
template const QuadRule<long double>& segment_rule<long double>(int);

}  // namespace lcg
