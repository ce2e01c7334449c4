#pragma once

#include <lcg/types.hpp>

#include <vector>

namespace lcg {

/// Quadrature on a reference domain. Triangle rules live on the unit right
/// triangle {(s, t) : s, t >= 0, s + t <= 1} with weights summing to 1/2;
/// segment rules live on [0, 1] with weights summing to 1 (point stored in x()).
template <class Scalar>
struct QuadRule {
  std::vector<Point2<Scalar>> points;
  std::vector<Scalar> weights;
  int degree = 0;
  std::size_t size() const { return weights.size(); }
};

enum class QuadDomain : std::uint8_t { Triangle, Segment };

/// Positive-weight rules: triangle degree <= 6, segment degree <= 9.
template <class Scalar = double>
QuadRule<Scalar> quadrature(QuadDomain domain, int degree);

template <class Scalar = double>
const QuadRule<Scalar>& triangle_rule(int degree);
template <class Scalar = double>
const QuadRule<Scalar>& segment_rule(int degree);

}  // namespace lcg
