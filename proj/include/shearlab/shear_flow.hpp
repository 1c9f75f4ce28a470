#pragma once

#include "shearlab/profile.hpp"
#include "shearlab/types.hpp"

namespace shearlab {

/// u(x, t) = (u₁(x₂), 0, u₃(x₁ − t·u₁(x₂))). Exact pressureless Euler solution
/// for smooth profiles, weak solution for rough ones.
struct ShearFlow {
  ProfileFunction u1;
  ProfileFunction u3;
};

/// Argument s = x₁ − t·u₁(x₂) at which u₃ is evaluated.
double shear_argument(const ShearFlow& flow, const Point3& x, double t);

Vec3 eval_velocity(const ShearFlow& flow, const Point3& x, double t);

/// (−t·u₁′(x₂)·u₃′(s), −u₃′(s), −u₁′(x₂)).
Vec3 eval_vorticity(const ShearFlow& flow, const Point3& x, double t);

/// Entry (i, j) is ∂ⱼuᵢ.
Mat3 eval_velocity_gradient(const ShearFlow& flow, const Point3& x, double t);

}  // namespace shearlab
