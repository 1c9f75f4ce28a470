#include "shearlab/shear_flow.hpp"

namespace shearlab {

double shear_argument(const ShearFlow& flow, const Point3& x, double t) {
  return x(0) - t * flow.u1(x(1));
}

Vec3 eval_velocity(const ShearFlow& flow, const Point3& x, double t) {
  return {flow.u1(x(1)), 0.0, flow.u3(shear_argument(flow, x, t))};
}

Vec3 eval_vorticity(const ShearFlow& flow, const Point3& x, double t) {
  const double du1 = flow.u1.derivative(x(1));
  const double du3 = flow.u3.derivative(shear_argument(flow, x, t));
  return {-t * du1 * du3, -du3, -du1};
}

Mat3 eval_velocity_gradient(const ShearFlow& flow, const Point3& x, double t) {
  const double du1 = flow.u1.derivative(x(1));
  const double du3 = flow.u3.derivative(shear_argument(flow, x, t));
  Mat3 g = Mat3::Zero();
  g(0, 1) = du1;
  g(2, 0) = du3;
  g(2, 1) = -t * du1 * du3;
  return g;
}

}  // namespace shearlab
