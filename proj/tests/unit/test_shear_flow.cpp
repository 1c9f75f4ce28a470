#include <doctest.h>

#include <cmath>
#include <random>

#include "shearlab/errors.hpp"
#include "shearlab/shear_flow.hpp"

using namespace shearlab;

namespace {

ShearFlow smooth_flow() {
  return {ProfileFunction::trig(1, 0.3, 0.8, 0.1), ProfileFunction::trig(2, -0.7, 1.2, 0.0)};
}

Mat3 fd_jacobian(const ShearFlow& f, const Point3& x, double t, double h) {
  Mat3 j;
  for (int c = 0; c < 3; ++c) {
    const Point3 e = Point3::Unit(c) * h;
    j.col(c) = (eval_velocity(f, x + e, t) - eval_velocity(f, x - e, t)) / (2.0 * h);
  }
  return j;
}

Vec3 curl(const Mat3& g) {
  return {g(2, 1) - g(1, 2), g(0, 2) - g(2, 0), g(1, 0) - g(0, 1)};
}

}  // namespace

TEST_SUITE("shear_flow") {
  TEST_CASE("no advection when u1 vanishes") {
    const ShearFlow f{ProfileFunction::constant(0.0), ProfileFunction::trig(1)};
    for (double t : {0.0, 0.7, 5.0}) {
      const Vec3 u = eval_velocity(f, Point3(0.13, 0.4, 0.9), t);
      CHECK(u(0) == 0.0);
      CHECK(u(1) == 0.0);
      CHECK(u(2) == doctest::Approx(std::sin(kTwoPi * 0.13)));
    }
  }

  TEST_CASE("constant u1 translates the initial field") {
    const double c = 0.37;
    const ShearFlow f{ProfileFunction::constant(c), ProfileFunction::cusp(0.5)};
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> pick(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
      const Point3 x(pick(rng), pick(rng), pick(rng));
      const double t = pick(rng);
      const Point3 shifted(x(0) - t * c, x(1), x(2));
      CHECK(eval_velocity(f, x, t) == eval_velocity(f, shifted, 0.0));
    }
  }

  TEST_CASE("velocity is periodic in each coordinate") {
    const ShearFlow f{ProfileFunction::cusp(0.4), ProfileFunction::step(1.0, 0.0, 0.5)};
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> pick(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
      const Point3 x(std::ldexp(std::round(std::ldexp(pick(rng), 30)), -30),
                     std::ldexp(std::round(std::ldexp(pick(rng), 30)), -30), pick(rng));
      const double t = 0.5;
      const Vec3 u = eval_velocity(f, x, t);
      for (int c = 0; c < 3; ++c) {
        const Vec3 v = eval_velocity(f, x + Point3::Unit(c), t);
        CHECK((u - v).norm() <= 1e-15);
      }
    }
  }

  TEST_CASE("cusp flow trace at the origin") {
    const double a = 0.6;
    const ShearFlow f{ProfileFunction::cusp(a), ProfileFunction::cusp(a)};
    for (double t : {0.5, 1.0}) {
      for (double x2 : {1e-4, -3e-3, 0.01}) {
        const double expect = std::pow(t, a) * std::pow(std::abs(x2), a * a);
        CHECK(eval_velocity(f, Point3(0.0, x2, 0.2), t)(2) == doctest::Approx(expect).epsilon(1e-13));
      }
    }
  }

  TEST_CASE("vorticity of simple flows") {
    const ShearFlow shear{ProfileFunction::trig(1), ProfileFunction::constant(0.0)};
    const Point3 x(0.2, 0.3, 0.4);
    const Vec3 w = eval_vorticity(shear, x, 2.0);
    CHECK(w(0) == 0.0);
    CHECK(w(1) == 0.0);
    CHECK(w(2) == doctest::Approx(-kTwoPi * std::cos(kTwoPi * 0.3)));

    const ShearFlow both{ProfileFunction::trig(1), ProfileFunction::trig(1)};
    const Vec3 w0 = eval_vorticity(both, x, 0.0);
    CHECK(w0(0) == 0.0);
    CHECK(w0(1) == doctest::Approx(-kTwoPi * std::cos(kTwoPi * 0.2)));
    CHECK(w0(2) == doctest::Approx(-kTwoPi * std::cos(kTwoPi * 0.3)));
  }

  TEST_CASE("gradient and vorticity agree with finite differences at second order") {
    const ShearFlow f = smooth_flow();
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> pick(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
      const Point3 x(pick(rng), pick(rng), pick(rng));
      const double t = 3.0 * pick(rng);
      const Mat3 g = eval_velocity_gradient(f, x, t);
      const Vec3 w = eval_vorticity(f, x, t);
      double prev_g = 0.0;
      double prev_w = 0.0;
      for (double h : {1e-3, 1e-4}) {
        const Mat3 fd = fd_jacobian(f, x, t, h);
        const double eg = (fd - g).norm();
        const double ew = (curl(fd) - w).norm();
        CHECK(eg <= 1e4 * h * h * (1.0 + g.norm()));
        if (prev_g > 1e-9) {
          CHECK(prev_g / eg == doctest::Approx(100.0).epsilon(0.05));
          CHECK(prev_w / ew == doctest::Approx(100.0).epsilon(0.05));
        }
        prev_g = eg;
        prev_w = ew;
      }
    }
  }

  TEST_CASE("gradient special cases") {
    const ShearFlow constant{ProfileFunction::constant(1.0), ProfileFunction::constant(-2.0)};
    CHECK(eval_velocity_gradient(constant, Point3(0.1, 0.2, 0.3), 4.0).isZero());
    const Mat3 g0 = eval_velocity_gradient(smooth_flow(), Point3(0.1, 0.2, 0.3), 0.0);
    CHECK(g0(2, 1) == 0.0);
  }

  TEST_CASE("non-differentiable points are refused") {
    const ShearFlow f{ProfileFunction::cusp(0.5), ProfileFunction::step(1.0, 0.0, 0.5)};
    CHECK_THROWS_AS(eval_vorticity(f, Point3(0.3, 0.0, 0.0), 1.0), NonDifferentiableProfile);
    CHECK_THROWS_AS(eval_velocity_gradient(f, Point3(0.5, 0.5, 0.0), 0.0),
                    NonDifferentiableProfile);
  }
}
