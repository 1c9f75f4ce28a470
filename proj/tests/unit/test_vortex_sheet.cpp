#include <doctest.h>

#include <cmath>
#include <random>

#include "shearlab/errors.hpp"
#include "shearlab/spectral.hpp"
#include "shearlab/vortex_sheet.hpp"

using namespace shearlab;

namespace {

// Symmetric image sum with tail estimates for both components.
Vec2 kernel_by_images(const Vec2& d) {
  const int m_max = 20000;
  Vec2 acc = Vec2::Zero();
  for (int m = -m_max; m <= m_max; ++m) {
    const Vec2 s(d(0) + m, d(1));
    acc += s / s.squaredNorm();
  }
  const double edge = m_max + 0.5;
  acc(0) -= 2.0 * d(0) / edge;
  acc(1) += 2.0 * (kPi / 2.0 - std::atan(edge / std::abs(d(1)))) * (d(1) > 0 ? 1.0 : -1.0);
  return acc;
}

SheetCurve2D wavy(double amp, int nodes, std::function<double(double)> density = [](double) { return 1.0; }) {
  return SheetCurve2D::graph([amp](double l) { return amp * std::sin(kTwoPi * l); },
                             [amp](double l) { return amp * kTwoPi * std::cos(kTwoPi * l); },
                             std::move(density), nodes);
}

}  // namespace

TEST_SUITE("vortex_sheet") {
  TEST_CASE("flat uniform sheet") {
    const auto sheet = SheetCurve2D::flat([](double) { return 1.0; }, 256);
    for (double x1 : {0.0, 0.13, 0.5}) {
      for (double x2 : {0.05, 0.3, 2.0}) {
        const Vec2 up = biot_savart_2d(sheet, Vec2(x1, x2));
        const Vec2 dn = biot_savart_2d(sheet, Vec2(x1, -x2));
        CHECK(std::abs(up(0) + 0.5) <= 1e-8);
        CHECK(std::abs(dn(0) - 0.5) <= 1e-8);
        CHECK(std::abs(up(1)) <= 1e-8);
      }
    }
    for (double l : {0.0, 0.37}) CHECK(average_velocity_on_sheet(sheet, l).norm() <= 1e-8);
    CHECK_THROWS_AS(biot_savart_2d(sheet, Vec2(0.2, 1e-3)), TooCloseToSheet);
  }

  TEST_CASE("flat sheet error decays with the node count") {
    double previous = 1.0;
    for (int m : {8, 16, 32}) {
      const auto sheet = SheetCurve2D::flat([](double) { return 1.0; }, m);
      const double err = std::abs(biot_savart_2d(sheet, Vec2(0.1, 0.4))(0) + 0.5);
      CHECK(err <= previous);
      previous = std::max(err, 1e-16);
    }
    CHECK(previous <= 1e-12);
  }

  TEST_CASE("zero density") {
    const auto sheet = wavy(0.05, 64, [](double) { return 0.0; });
    CHECK(biot_savart_2d(sheet, Vec2(0.3, 0.4)).norm() == 0.0);
    CHECK(average_velocity_on_sheet(sheet, 0.2).norm() == 0.0);
    const auto j = jump_check(sheet, 0.2, 0.1);
    CHECK(j.normal_jump == 0.0);
    CHECK(j.tangential_jump == 0.0);
    CHECK(j.density_residual == 0.0);
  }

  TEST_CASE("periodic kernel against the image sum") {
    for (const Vec2& d : {Vec2(0.1, 0.2), Vec2(-0.4, 0.05), Vec2(0.3, -1.1), Vec2(0.0, 0.7)}) {
      CHECK((periodic_kernel(d) - kernel_by_images(d)).norm() <= 1e-8);
    }
  }

  TEST_CASE("single density mode decays exponentially") {
    const auto sheet = SheetCurve2D::flat([](double l) { return std::cos(kTwoPi * l); }, 256);
    const double ratio = biot_savart_2d(sheet, Vec2(0.0, 1.0))(0) / biot_savart_2d(sheet, Vec2(0.0, 0.5))(0);
    CHECK(std::abs(ratio / std::exp(-kPi) - 1.0) <= 0.05);
  }

  TEST_CASE("near-flat sheet average velocity follows the linearization") {
    const double eps = 1e-3;
    const int m = 256;
    const auto sheet = wavy(eps, m);
    const auto y = SpectralField::from_function([](double l) { return std::sin(kTwoPi * l); }, PeriodicGrid(m));
    const auto dy = abs_derivative(y).samples();
    for (int j : {0, 17, 64, 101}) {
      const Vec2 v = average_velocity_on_sheet(sheet, sheet.node(j));
      CHECK(std::abs(v(0) + 0.5 * eps * dy[static_cast<std::size_t>(j)]) <= 1e-4);
      CHECK(std::abs(v(1)) <= 1e-4);
      // The normal component is quadratic in the amplitude.
      const Vec2 half = average_velocity_on_sheet(wavy(eps / 2.0, m), sheet.node(j));
      if (std::abs(v(1)) > 1e-12) CHECK(v(1) / half(1) == doctest::Approx(4.0).epsilon(0.05));
    }
    CHECK(chord_arc_constant(sheet) <= 1.1);
    CHECK(chord_arc_constant(wavy(0.05, 128)) <= 1.1);
  }

  TEST_CASE("jump relations") {
    const auto flat = SheetCurve2D::flat([](double) { return 1.0; }, 256);
    const auto j = jump_check(flat, 0.3, 0.05);
    CHECK(j.normal_jump <= 1e-12);
    CHECK(j.tangential_jump == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(j.density_residual <= 1e-6);

    const auto sheet = wavy(0.05, 512, [](double l) { return 1.0 + 0.3 * std::cos(kTwoPi * l); });
    const double lambda = 0.1;
    std::vector<JumpReport> r;
    for (double delta : {0.05, 0.025, 0.0125}) r.push_back(jump_check(sheet, lambda, delta));
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
      const double a = r[i].normal_jump / r[i + 1].normal_jump;
      const double b = r[i].density_residual / r[i + 1].density_residual;
      CHECK(a == doctest::Approx(2.0).epsilon(0.15));
      CHECK(b == doctest::Approx(2.0).epsilon(0.15));
    }
    const Vec2 v = average_velocity_on_sheet(sheet, lambda);
    const double e1 = (r[1].probe_average - v).norm();
    const double e2 = (r[2].probe_average - v).norm();
    CHECK(e2 <= 0.6 * e1);
  }

  TEST_CASE("sampled sheet agrees with the closed form") {
    const int m = 64;
    std::vector<double> r1(m, 0.0);
    std::vector<double> r2(m);
    std::vector<double> w(m);
    for (int j = 0; j < m; ++j) {
      const double l = static_cast<double>(j) / m;
      r2[static_cast<std::size_t>(j)] = 0.05 * std::sin(kTwoPi * l);
      w[static_cast<std::size_t>(j)] = 1.0 + 0.3 * std::cos(kTwoPi * l);
    }
    const auto a = SheetCurve2D::sampled(r1, r2, w);
    const auto b = wavy(0.05, m, [](double l) { return 1.0 + 0.3 * std::cos(kTwoPi * l); });
    CHECK((a.position(0.123) - b.position(0.123)).norm() <= 1e-14);
    CHECK((a.tangent(0.456) - b.tangent(0.456)).norm() <= 1e-12);
    CHECK((biot_savart_2d(a, Vec2(0.3, 0.4)) - biot_savart_2d(b, Vec2(0.3, 0.4))).norm() <= 1e-12);
    CHECK_THROWS_AS(SheetCurve2D::sampled(r1, r2, std::vector<double>(8, 1.0)), InvalidParameters);
  }

  TEST_CASE("example 1 surface") {
    const Example1Params p;
    const auto s0 = example1_surface(p, 0.0);
    REQUIRE(s0.pieces().size() == 3);
    CHECK(s0.pieces()[1].offset == s0.pieces()[2].offset);
    const auto s = example1_surface(p, 0.25);
    CHECK(s.pieces()[1].offset == 0.75);
    CHECK(s.pieces()[2].offset == 0.5);
    for (double z : {0.0, 0.4, -3.0}) {
      CHECK(s.contains(Point3(0.75, 0.3, z)));
      CHECK_FALSE(s.contains(Point3(0.75, 0.7, z)));
      CHECK(s.contains(Point3(0.2, 0.5, z)));
    }
    CHECK_FALSE(s.describe().empty());
    Example1Params bad;
    bad.beta1 = 2.0;
    CHECK_THROWS_AS(example1_surface(bad, 0.0), InvalidParameters);
    bad = Example1Params{};
    bad.beta3 = bad.alpha3;
    CHECK_THROWS_AS(example1_surface(bad, 0.0), InvalidParameters);
    const auto flow = example1_flow(p);
    CHECK(flow.u1(0.3) == 1.0);
    CHECK(flow.u1(0.7) == 0.0);
  }

  TEST_CASE("example 2 vorticity") {
    const auto trig = ProfileFunction::trig(1);
    const auto at0 = example2_vorticity(trig, 0.0, 0.3);
    CHECK(at0.sheet_density == Vec3(0.0, 1.0, 0.0));
    CHECK(at0.bulk_component == doctest::Approx(-trig.derivative(0.3)));
    CHECK(at0.tangency_residual == 0.0);
    const auto e = example2_vorticity(trig, 1.0, 0.0);
    const Vec3 want = Vec3(kTwoPi, 1.0, 0.0) / std::sqrt(1.0 + 4.0 * kPi * kPi);
    CHECK((e.sheet_density - want).norm() <= 1e-15);
    CHECK(e.tangency_residual <= 1e-14);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const auto cusp = ProfileFunction::cusp(0.5);
    for (int i = 0; i < 200; ++i) {
      const double t = u(rng);
      const double x2 = u(rng) / 7.0 + 0.01;
      for (const auto* f : {&trig, &cusp}) {
        const auto v = example2_vorticity(*f, t, x2);
        CHECK(std::abs(v.sheet_density.head<2>().norm() - 1.0) <= 1e-14);
        CHECK(v.tangency_residual <= 1e-12);
      }
    }
    CHECK_THROWS_AS(example2_vorticity(cusp, 1.0, 0.0), NonDifferentiableProfile);
  }

  TEST_CASE("flat sheet in three dimensions") {
    const Vec3 w(0.3, -1.2, 0.0);
    const Vec3 up = flat_sheet_velocity_3d(w, Point3(0.1, 0.2, 0.4));
    const Vec3 dn = flat_sheet_velocity_3d(w, Point3(0.1, 0.2, -0.4));
    CHECK((Vec3::UnitZ().cross(up - dn) - w).norm() <= 1e-15);
    CHECK((up + dn).norm() == 0.0);
    // Disk of radius R: (1/4π) ω̃ × ∫ (x − y)/|x − y|³ dS at height z on the axis.
    for (double z : {0.3, -0.3}) {
      const double r = 1e7;
      const double g = 2.0 * kPi * (z > 0 ? 1.0 : -1.0) * (1.0 - std::abs(z) / std::sqrt(r * r + z * z));
      const Vec3 disk = w.cross(Vec3::UnitZ()) * g / (4.0 * kPi);
      CHECK((flat_sheet_velocity_3d(w, Point3(0.0, 0.0, z)) - disk).norm() <= 1e-7);
    }
    CHECK_THROWS_AS(flat_sheet_velocity_3d(Vec3(0.0, 0.0, 1.0), Point3(0.0, 0.0, 1.0)), InvalidBackground);
  }
}
