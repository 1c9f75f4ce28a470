#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "shearlab/profile.hpp"
#include "shearlab/shear_flow.hpp"
#include "shearlab/types.hpp"

namespace shearlab {

using Vec3c = Eigen::Vector3cd;
using Wavevector = Eigen::Vector3i;

/// w(t) = exp(1 − 1/(1 − s²)) for |s| < 1, s = (t − center)/radius, else 0.
struct TimeWindow {
  double center = 0.0;
  double radius = 1.0;

  double operator()(double t) const;
  double derivative(double t) const;
  double end() const { return center + radius; }
};

/// One Fourier mode of a test function; contributes Re(c · e^{2πik·x}).
struct TestMode {
  Wavevector k = Wavevector::Zero();
  Vec3c c = Vec3c::Zero();
};

/// Divergence-free trigonometric polynomial times a time window. Amplitudes
/// are projected onto k⊥ at construction so ∇·φ = 0 holds exactly.
class TestFunction {
 public:
  TestFunction(std::vector<TestMode> modes, TimeWindow window);

  const std::vector<TestMode>& modes() const { return modes_; }
  const TimeWindow& window() const { return window_; }

  Vec3 value(const Point3& x, double t) const;
  Vec3 time_derivative(const Point3& x, double t) const;
  /// Entry (i, j) is ∂ⱼφᵢ.
  Mat3 gradient(const Point3& x, double t) const;

  /// Returns aφ + bψ; the window of both must agree.
  static TestFunction combine(double a, const TestFunction& phi, double b,
                              const TestFunction& psi);

 private:
  std::vector<TestMode> modes_;
  TimeWindow window_;
};

struct QuadratureSpec {
  int n = 64;              ///< nodes per spatial axis
  int q = 16;              ///< Gauss–Legendre nodes in time
  double t_end = 1.0;
  double offset = kGoldenFraction;  ///< grid shift as a fraction of a cell
};

/// R = ∫∫ [u·∂ₜφ + ⟨u⊗u, ∇φ⟩] dx dt + ∫ u₀·φ(·, 0) dx, which vanishes for a
/// weak solution. The x₃ trapezoid sum is taken in closed form, exact because
/// shear flows do not depend on x₃.
double weak_residual(const ShearFlow& flow, const TestFunction& phi, const QuadratureSpec& quad);

/// Residuals for a whole basis, sharing the velocity evaluations.
std::vector<double> weak_residuals(const ShearFlow& flow, const std::vector<TestFunction>& basis,
                                   const QuadratureSpec& quad);

struct WeakResidualStudy {
  std::vector<double> coarse;  ///< residuals at quad.n
  std::vector<double> fine;    ///< residuals at 2·quad.n
  double max_coarse = 0.0;
  double max_fine = 0.0;
  double rms_coarse = 0.0;
  double rms_fine = 0.0;
  /// Set when doubling N moved some residual by more than half its size.
  bool under_resolved = false;
};

WeakResidualStudy weak_residual_study(const ShearFlow& flow,
                                      const std::vector<TestFunction>& basis,
                                      const QuadratureSpec& quad);

/// cos(2π·mode·x + phase)
struct TrigFactor {
  int mode = 0;
  double phase = 0.0;
  double operator()(double x) const;
};

struct FubiniFactors {
  TrigFactor phi1;
  TrigFactor phi2;
  TrigFactor phi3;
  TimeWindow phi4;
};

struct FubiniResult {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// lhs = ∫ u₃(x₁ − t·u₁(x₂)) φ₁(x₁)φ₂(x₂)φ₃(x₃)φ₄(t),
/// rhs = ∫ u₃(x₁) φ₁(x₁ + t·u₁(x₂))φ₂(x₂)φ₃(x₃)φ₄(t).
FubiniResult fubini_check(const ProfileFunction& u1, const ProfileFunction& u3,
                          const FubiniFactors& phis, const QuadratureSpec& quad);

/// Largest |∫ u·∇ψ dx| over ψ = e^{2πik·x}, |k|∞ ≤ max_mode, on the shifted N³ grid.
double divergence_residual(const ShearFlow& flow, double t, int n, int max_mode = 3);
double divergence_residual(const std::function<Vec3(const Point3&)>& field, int n,
                           int max_mode = 3, double offset = kGoldenFraction);

/// Seeded family of single-mode test functions with |k|∞ ≤ max_mode, k ≠ 0,
/// unit amplitude in k⊥, window radius in [1/2, 1] and center in [0, 1 − radius].
std::vector<TestFunction> generate_test_basis(int max_mode, int count, std::uint64_t seed);

}  // namespace shearlab
