#include "shearlab/quadrature.hpp"

#include <boost/math/special_functions/legendre.hpp>
#include <cmath>

#include "shearlab/errors.hpp"

namespace shearlab {

QuadratureRule gauss_legendre(int q, double a, double b) {
  if (q < 2) throw InvalidParameters("Gauss-Legendre order must be at least 2");
  // legendre_p_zeros returns the nonnegative roots in increasing order.
  const auto half = boost::math::legendre_p_zeros<double>(q);
  std::vector<double> roots;
  for (auto it = half.rbegin(); it != half.rend(); ++it) {
    if (*it != 0.0) roots.push_back(-*it);
  }
  for (double r : half) roots.push_back(r);
  QuadratureRule rule;
  const double mid = 0.5 * (a + b);
  const double scale = 0.5 * (b - a);
  for (double x : roots) {
    const double dp = boost::math::legendre_p_prime(q, x);
    rule.nodes.push_back(mid + scale * x);
    rule.weights.push_back(scale * 2.0 / ((1.0 - x * x) * dp * dp));
  }
  return rule;
}

double compensated_sum(const std::vector<double>& values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

}  // namespace shearlab
