#pragma once

#include <cmath>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace shearlab {

using Point3 = Eigen::Vector3d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec2 = Eigen::Vector2d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Fractional part of the golden ratio; default sub-cell grid offset.
inline constexpr double kGoldenFraction = 0.61803398874989484820;

/// Reduces x to [0, 1).
inline double wrap_unit(double x) {
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

/// Reduces x to [-1/2, 1/2).
inline double wrap_centered(double x) {
  // x − floor(x + 1/2) keeps small |x| exact.
  const double r = x - std::floor(x + 0.5);
  return r < -0.5 ? r + 1.0 : (r >= 0.5 ? r - 1.0 : r);
}

}  // namespace shearlab
