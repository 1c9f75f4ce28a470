#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "shearlab/errors.hpp"
#include "shearlab/kh_stability.hpp"

using namespace shearlab;

namespace {

// Classical RK4 with many small steps as an independent propagator.
Vec2c rk4(const Mat2& m, Vec2c x, double t, int steps) {
  const double h = t / steps;
  const Eigen::Matrix2cd a = m.cast<Complex>();
  for (int i = 0; i < steps; ++i) {
    const Vec2c k1 = a * x;
    const Vec2c k2 = a * (x + 0.5 * h * k1);
    const Vec2c k3 = a * (x + 0.5 * h * k2);
    const Vec2c k4 = a * (x + h * k3);
    x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return x;
}

Vec2c eigen_oracle(const Mat2& m, const Vec2c& x, double t) {
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(m.cast<Complex>());
  const Eigen::Matrix2cd v = es.eigenvectors();
  Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
  for (int i = 0; i < 2; ++i) d(i, i) = std::exp(t * es.eigenvalues()(i));
  return v * d * v.inverse() * x;
}

const Complex I(0.0, 1.0);

}  // namespace

TEST_SUITE("kh_stability") {
  TEST_CASE("2d mode matrices") {
    for (auto c : {KhConvention::first_order, KhConvention::second_order}) {
      CHECK(growth_rate(3, 0.0, c) == 0.0);
      CHECK_THROWS_AS(mode2d_matrix(0, 1.0, c), ZeroMode);
    }
    const Mat2 m = mode2d_matrix(1, 1.0, KhConvention::first_order);
    Eigen::EigenSolver<Mat2> es(m);
    std::vector<double> ev = {es.eigenvalues()(0).real(), es.eigenvalues()(1).real()};
    std::sort(ev.begin(), ev.end());
    CHECK(ev[0] == doctest::Approx(-kTwoPi));
    CHECK(ev[1] == doctest::Approx(kTwoPi));
    CHECK(growth_rate(3, 2.0, KhConvention::second_order) == doctest::Approx(12.0 * kPi));
    CHECK(growth_rate(-3, 2.0, KhConvention::second_order) == doctest::Approx(12.0 * kPi));
    CHECK(growth_rate(2, 4.0, KhConvention::first_order) == doctest::Approx(2.0 * 4.0 * kPi));
    CHECK(std::string(to_string(KhConvention::first_order)) == "first_order");
  }

  TEST_CASE("closed-form exponential matches the oracles") {
    for (double a : {-2.0, 0.0, 0.5, 3.0}) {
      for (double b : {-1.5, 0.0, 2.0}) {
        Mat2 m;
        m << 0.0, a, b, 0.0;
        const Vec2c x(Complex(0.3, -0.1), Complex(-0.7, 0.4));
        const double t = 0.8;
        const Vec2c got = expm_offdiagonal(a, b, t).cast<Complex>() * x;
        CHECK((got - rk4(m, x, t, 4000)).norm() <= 1e-9 * got.norm());
        if (a * b != 0.0) CHECK((got - eigen_oracle(m, x, t)).norm() <= 1e-9 * got.norm());
      }
    }
    CHECK(expm_offdiagonal(2.0, 3.0, 0.0).isIdentity(0.0));
  }

  TEST_CASE("mode evolution") {
    Mode2D mode{1, 1.0, Vec2c(Complex(1.0, 0.0), Complex(-2.0, 1.0))};
    CHECK(evolve_mode2d(mode, KhConvention::first_order, 0.0) == mode.state);
    // Unstable eigenvector of [[0, 2π], [2π, 0]].
    mode.state = Vec2c(1.0, 1.0) / std::sqrt(2.0);
    const Vec2c out = evolve_mode2d(mode, KhConvention::first_order, 1.0);
    CHECK(std::abs(out.norm() / mode.state.norm() - std::exp(kTwoPi)) <= 1e-9 * std::exp(kTwoPi));
    for (auto c : {KhConvention::first_order, KhConvention::second_order}) {
      for (int k : {1, 4}) {
        Mode2D g{k, 1.7, Vec2c(Complex(0.2, 0.1), Complex(0.9, -0.3))};
        const double sigma = growth_rate(k, g.omega0, c);
        const double t = 8.0 / sigma;
        // Rate over [t, 2t] so the projection onto the unstable direction cancels.
        const double rate = std::log(evolve_mode2d(g, c, 2.0 * t).norm() / evolve_mode2d(g, c, t).norm()) / t;
        CHECK(std::abs(rate - sigma) <= 0.02 * sigma);
        const Vec2c e = eigen_oracle(mode2d_matrix(k, g.omega0, c), g.state, 1.0 / k);
        CHECK((evolve_mode2d(g, c, 1.0 / k) - e).norm() <= 1e-9 * e.norm());
      }
    }
  }

  TEST_CASE("Hadamard slope") {
    for (auto c : {KhConvention::first_order, KhConvention::second_order}) {
      for (double w : {0.5, 1.0, 3.0}) CHECK(std::abs(hadamard_slope(w, c, 16) - 1.0) <= 0.01);
    }
  }

  TEST_CASE("3d matrix entries") {
    const auto z = assemble_3d_matrix(1.3, 0.7, Vec3::Zero());
    CHECK(z.entries.block(1, 0, 3, 4).isZero(0.0));
    const auto m = assemble_3d_matrix(2.0, 0.0, Vec3(0.0, 1.0, 0.0));
    Mat4c want = Mat4c::Zero();
    want(0, 2) = -0.5 * I;
    want(2, 0) = 2.0 * I;
    CHECK((m.entries - want).norm() <= 1e-15);
    CHECK_THROWS_AS(assemble_3d_matrix(1.0, 0.0, Vec3(1.0, 0.0, 0.2)), InvalidBackground);
    CHECK_THROWS_AS(assemble_3d_matrix(0.0, 0.0, Vec3(1.0, 0.0, 0.0)), InvalidParameters);
  }

  TEST_CASE("3d spectrum examples") {
    const auto zero = spectrum_3d(assemble_3d_matrix(1.0, 0.4, Vec3::Zero()));
    for (const auto& e : zero.eigenvalues) CHECK(std::abs(e) <= 1e-12);
    CHECK(zero.max_deviation <= 1e-12);

    const auto ex = spectrum_3d(assemble_3d_matrix(2.0, 0.0, Vec3(0.0, 1.0, 0.0)));
    const Spectrum4 hand = {Complex(-1.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(1.0, 0.0)};
    CHECK(multiset_distance(ex.eigenvalues, hand) <= 1e-12);
    CHECK(ex.max_deviation <= 1e-12);

    for (double th : {0.0, 0.3, 1.2, kPi / 2, 2.5}) {
      const Vec3 w = 1.7 * Vec3(std::cos(th), std::sin(th), 0.0);
      const auto par = spectrum_3d(assemble_3d_matrix(3.0, th, w));
      CHECK(wedge_magnitude(3.0, th, w) <= 1e-14);
      for (const auto& e : par.eigenvalues) CHECK(std::abs(e) <= 1e-10);
    }
  }

  TEST_CASE("3d spectrum on random samples") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> km(0.1, 10.0);
    std::uniform_real_distribution<double> th(0.0, kTwoPi);
    std::uniform_real_distribution<double> om(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
      const double k = km(rng);
      const double t = th(rng);
      const Vec3 w(om(rng), om(rng), 0.0);
      const auto m = assemble_3d_matrix(k, t, w);
      const auto r = spectrum_3d(m);
      CHECK(r.max_deviation <= 1e-10);
      CHECK(std::abs(r.trace) <= 1e-12);
      CHECK(std::abs(m.entries.trace()) == 0.0);

      // Simultaneous rotation of k and ω̃⁰.
      const double phi = th(rng);
      const Vec3 wr(std::cos(phi) * w(0) - std::sin(phi) * w(1),
                    std::sin(phi) * w(0) + std::cos(phi) * w(1), 0.0);
      const auto rr = spectrum_3d(assemble_3d_matrix(k, t + phi, wr));
      CHECK(multiset_distance(r.eigenvalues, rr.eigenvalues) <= 1e-10);

      // Homogeneity in ω̃⁰.
      const auto scaled = spectrum_3d(assemble_3d_matrix(k, t, 2.5 * w));
      Spectrum4 expect = r.eigenvalues;
      for (auto& e : expect) e *= 2.5;
      CHECK(multiset_distance(scaled.eigenvalues, expect) <= 1e-10 * (1.0 + k * w.norm()));
    }
  }

  TEST_CASE("multiset distance") {
    const Spectrum4 a = {Complex(1, 0), Complex(2, 0), Complex(3, 0), Complex(4, 0)};
    const Spectrum4 b = {Complex(4, 0), Complex(3, 0), Complex(2, 0), Complex(1, 0.5)};
    CHECK(multiset_distance(a, b) == doctest::Approx(0.5));
    const Spectrum4 c = {Complex(0, 0), Complex(0, 0), Complex(0, 0), Complex(1, 0)};
    const Spectrum4 d = {Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(1, 0)};
    CHECK(multiset_distance(c, d) == doctest::Approx(1.0));
  }

  TEST_CASE("ellipticity scans") {
    const auto e2 = ellipticity_scan_2d(1.0, KhConvention::first_order, 16);
    CHECK(e2.k.size() == 32);
    CHECK(e2.min_ratio == doctest::Approx(1.0).epsilon(1e-14));
    const auto e2b = ellipticity_scan_2d(4.0, KhConvention::first_order, 16);
    CHECK(e2b.min_ratio == doctest::Approx(2.0).epsilon(1e-14));
    const auto e2c = ellipticity_scan_2d(4.0, KhConvention::second_order, 16);
    CHECK(e2c.min_ratio == doctest::Approx(4.0).epsilon(1e-14));
    CHECK_THROWS_AS(ellipticity_scan_2d(1.0, KhConvention::first_order, 4), InvalidParameters);

    const auto e3 = ellipticity_scan_3d(Vec3(1.0, 0.0, 0.0), 64);
    CHECK(e3.min_ratio <= 1e-10);
    CHECK(e3.argmin_theta == 0.0);
    const auto diag = ellipticity_scan_3d(Vec3(1.0, 1.0, 0.0) / std::sqrt(2.0), 64);
    CHECK(diag.min_ratio <= 1e-10);
    CHECK(std::abs(diag.argmin_theta - kPi / 4) <= kTwoPi / 64);
    CHECK_THROWS_AS(ellipticity_scan_3d(Vec3(1.0, 0.0, 0.0), 8), InvalidParameters);
  }
}
