#include <doctest.h>

#include <cmath>
#include <random>

#include "shearlab/errors.hpp"
#include "shearlab/profile.hpp"
#include "shearlab/types.hpp"

using namespace shearlab;

namespace {

std::vector<ProfileFunction> catalog() {
  return {ProfileFunction::constant(0.3),
          ProfileFunction::trig(2, 0.4, 1.5, -0.2),
          ProfileFunction::cusp(0.6),
          ProfileFunction::step(1.0, -0.5, 0.3),
          ProfileFunction::sin_inverse(),
          ProfileFunction::piecewise_constant({0.1, 0.4, 0.8}, {1.0, 2.0, -1.0}),
          ProfileFunction::sampled({0.0, 1.0, 0.5, -0.3, 0.2, 0.9, -1.0, 0.4}, 0),
          ProfileFunction::sampled({0.0, 1.0, 0.5, -0.3, 0.2, 0.9, -1.0, 0.4}, 1),
          ProfileFunction::sampled({0.0, 1.0, 0.5, -0.3, 0.2, 0.9, -1.0, 0.4}, 3)};
}

double central_difference(const ProfileFunction& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace

TEST_SUITE("profile") {
  TEST_CASE("every catalog kind is 1-periodic") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pick(-20.0, 20.0);
    for (const auto& f : catalog()) {
      for (int i = 0; i < 1000; ++i) {
        // Use dyadic points so x and x + 1 share the same fractional part exactly.
        const double x = std::ldexp(std::round(std::ldexp(pick(rng), 30)), -30);
        CHECK(f(x + 1.0) == f(x));
      }
    }
  }

  TEST_CASE("cusp coincides with |xi|^alpha near the origin") {
    const auto f = ProfileFunction::cusp(0.35);
    for (double x : {-0.25, -0.1, -1e-6, 0.0, 1e-9, 0.05, 0.2499, 0.25}) {
      CHECK(f(x) == doctest::Approx(std::pow(std::abs(x), 0.35)).epsilon(1e-15));
    }
    CHECK(f(0.5) == doctest::Approx(std::pow(0.25, 0.35)).epsilon(1e-15));
  }

  TEST_CASE("sin_inverse coincides with sin(1/xi) and vanishes at 0") {
    const auto f = ProfileFunction::sin_inverse();
    CHECK(f(0.0) == 0.0);
    for (double x : {-0.2, -0.01, 0.003, 0.1, 0.25}) {
      CHECK(f(x) == doctest::Approx(std::sin(1.0 / x)).epsilon(1e-15));
    }
    CHECK(f(0.5) == doctest::Approx(0.0).scale(1e-15));
    CHECK(f(-0.3) == doctest::Approx(-f(0.3)));
  }

  TEST_CASE("step is right-continuous at its jump") {
    const auto f = ProfileFunction::step(2.0, -1.0, 0.5);
    CHECK(f(0.5) == -1.0);
    CHECK(f(std::nextafter(0.5, 0.0)) == 2.0);
    CHECK(f(0.0) == 2.0);
    CHECK(f(1.0) == 2.0);
    CHECK_THROWS_AS(f.derivative(0.5), NonDifferentiableProfile);
    CHECK(f.derivative(0.25) == 0.0);
  }

  TEST_CASE("piecewise constant wraps its last level through zero") {
    const auto f = ProfileFunction::piecewise_constant({0.1, 0.4, 0.8}, {1.0, 2.0, -1.0});
    CHECK(f(0.05) == -1.0);
    CHECK(f(0.1) == 1.0);
    CHECK(f(0.5) == 2.0);
    CHECK(f(0.9) == -1.0);
    CHECK_THROWS_AS(f.derivative(0.4), NonDifferentiableProfile);
    CHECK_THROWS_AS(ProfileFunction::piecewise_constant({0.4, 0.1}, {1.0, 2.0}),
                    InvalidParameters);
  }

  TEST_CASE("sampled interpolation reproduces nodes") {
    const std::vector<double> v{0.0, 1.0, 0.5, -0.3, 0.2, 0.9, -1.0, 0.4};
    for (int order : {0, 1, 3}) {
      const auto f = ProfileFunction::sampled(v, order);
      for (std::size_t j = 0; j < v.size(); ++j) {
        CHECK(f(static_cast<double>(j) / 8.0) == doctest::Approx(v[j]).epsilon(1e-14));
      }
    }
    CHECK_THROWS_AS(ProfileFunction::sampled(v, 0).derivative(0.1), NonDifferentiableProfile);
    CHECK_THROWS_AS(ProfileFunction::sampled(v, 2), InvalidParameters);
  }

  TEST_CASE("cubic sampling is exact on cubic data away from the wrap") {
    std::vector<double> v(32);
    auto cubic = [](double x) { return 1.0 + x - 2.0 * x * x + 0.5 * x * x * x; };
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = cubic(static_cast<double>(j) / 32.0);
    const auto f = ProfileFunction::sampled(v, 3);
    for (double x : {0.2, 0.37, 0.5, 0.81}) {
      CHECK(f(x) == doctest::Approx(cubic(x)).epsilon(1e-13));
      CHECK(f.derivative(x) ==
            doctest::Approx(1.0 - 4.0 * x + 1.5 * x * x).epsilon(1e-12));
    }
  }

  TEST_CASE("closed-form derivatives match central differences") {
    const std::vector<ProfileFunction> fs{ProfileFunction::trig(3, 0.2, 0.7, 1.0),
                                          ProfileFunction::cusp(0.45),
                                          ProfileFunction::sin_inverse(0.2),
                                          ProfileFunction::cusp(0.8, 0.1)};
    for (const auto& f : fs) {
      for (double x : {-0.45, -0.3, -0.17, 0.09, 0.26, 0.33, 0.41}) {
        const double d = f.derivative(x);
        const double e1 = std::abs(central_difference(f, x, 1e-4) - d);
        const double e2 = std::abs(central_difference(f, x, 5e-5) - d);
        CHECK(e2 <= 1e-3 * std::max(1.0, std::abs(d)));
        if (e1 > 1e-8) CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
      }
    }
  }

  TEST_CASE("rough kinds refuse derivatives at their singular point") {
    CHECK_THROWS_AS(ProfileFunction::cusp(0.5).derivative(0.0), NonDifferentiableProfile);
    CHECK_THROWS_AS(ProfileFunction::cusp(0.5).derivative(3.0), NonDifferentiableProfile);
    CHECK_THROWS_AS(ProfileFunction::sin_inverse().derivative(0.0), NonDifferentiableProfile);
    CHECK_FALSE(ProfileFunction::cusp(0.5).smooth());
    CHECK(ProfileFunction::trig(1).smooth());
  }

  TEST_CASE("smooth transition is monotone with flat ends") {
    double prev = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double tau = i / 100.0;
      const double b = smooth_transition(tau);
      CHECK(b >= prev);
      CHECK(b + smooth_transition(1.0 - tau) == doctest::Approx(1.0));
      prev = b;
    }
    CHECK(smooth_transition(-1.0) == 0.0);
    CHECK(smooth_transition(2.0) == 1.0);
    for (double tau : {0.1, 0.35, 0.5, 0.8}) {
      const double fd = (smooth_transition(tau + 1e-6) - smooth_transition(tau - 1e-6)) / 2e-6;
      CHECK(smooth_transition_derivative(tau) == doctest::Approx(fd).epsilon(1e-8));
    }
    CHECK(smooth_transition_derivative(0.0) == 0.0);
    CHECK(smooth_transition_derivative(1.0) == 0.0);
  }

  TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(ProfileFunction::cusp(0.0), InvalidParameters);
    CHECK_THROWS_AS(ProfileFunction::cusp(1.2), InvalidParameters);
    CHECK_THROWS_AS(ProfileFunction::step(0.0, 1.0, 1.0), InvalidParameters);
    CHECK_THROWS_AS(ProfileFunction::sin_inverse(0.6), InvalidParameters);
  }

  TEST_CASE("describe names the kind") {
    CHECK(ProfileFunction::cusp(0.5).describe().rfind("cusp(", 0) == 0);
    CHECK(ProfileFunction::step(1, 0, 0.5).kind() == ProfileFunction::Kind::step);
  }
}
