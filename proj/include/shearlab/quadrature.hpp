#pragma once

#include <vector>

namespace shearlab {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// q-point Gauss–Legendre rule mapped to [a, b].
QuadratureRule gauss_legendre(int q, double a, double b);

/// Sum of a vector in index order with Neumaier compensation.
double compensated_sum(const std::vector<double>& values);

}  // namespace shearlab
