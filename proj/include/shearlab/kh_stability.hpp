#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "shearlab/fft.hpp"
#include "shearlab/types.hpp"

namespace shearlab {

using Mat2 = Eigen::Matrix2d;
using Vec2c = Eigen::Vector2cd;
using Mat4c = Eigen::Matrix4cd;

/// first_order: the pair ∂ₜyₓ = Ω₀|D|ω̃, ∂ₜω̃ = |D|yₓ.
/// second_order: companion form of ∂ₜₜv = Ω₀²(2πk)²v.
enum class KhConvention { first_order, second_order };

const char* to_string(KhConvention c);

Mat2 mode2d_matrix(int k, double omega0, KhConvention convention);

/// Largest real part of the spectrum of mode2d_matrix.
double growth_rate(int k, double omega0, KhConvention convention);

struct Mode2D {
  int k = 1;
  double omega0 = 1.0;
  Vec2c state = Vec2c::Zero();
};

/// exp(t·[[0, a], [b, 0]]) in closed form.
Mat2 expm_offdiagonal(double a, double b, double t);

/// exp(t·M) applied to the mode state.
Vec2c evolve_mode2d(const Mode2D& mode, KhConvention convention, double t);

/// Slope of log σ(k) against log k for k = 1..k_max.
double hadamard_slope(double omega0, KhConvention convention, int k_max);

struct StabilityMatrix3D {
  double kmag = 1.0;
  double theta = 0.0;
  Vec3 omega0 = Vec3::Zero();
  Mat4c entries = Mat4c::Zero();  ///< rows and columns ordered (x̂₃, ω̂₁, ω̂₂, ω̂₃)
};

/// The 4×4 linearization about the flat sheet x₃ = 0 with density ω̃⁰ in the plane.
StabilityMatrix3D assemble_3d_matrix(double kmag, double theta, const Vec3& omega0);

/// |k ∧ ω̃⁰| = |k|·|cos θ·ω̃₂⁰ − sin θ·ω̃₁⁰|.
double wedge_magnitude(double kmag, double theta, const Vec3& omega0);

using Spectrum4 = std::array<Complex, 4>;

struct SpectrumReport {
  Spectrum4 eigenvalues{};  ///< cluster-averaged, sorted by (real, imag)
  Spectrum4 raw{};          ///< as returned by the eigensolver, sorted
  Spectrum4 predicted{};    ///< {0, 0, −½|k∧ω̃⁰|, ½|k∧ω̃⁰|}, sorted
  double max_deviation = 0.0;
  double raw_deviation = 0.0;
  Complex trace{0.0, 0.0};
};

/// Eigenvalues of 𝒜 compared with the predicted multiset. Eigenvalues closer
/// than the perturbation radius of a 3×3 Jordan block, 8·ε^{1/3}·‖A‖, are
/// replaced by their cluster mean, which is well conditioned even when the
/// individual eigenvalues are not.
SpectrumReport spectrum_3d(const StabilityMatrix3D& m);

/// min over pairings π of max |a_i − b_π(i)|.
double multiset_distance(const Spectrum4& a, const Spectrum4& b);

struct Ellipticity2DReport {
  std::vector<int> k;
  std::vector<double> ratio;  ///< σ(k)/|2πk|
  double min_ratio = 0.0;
  int argmin_k = 0;
};

/// Ratios over k ∈ {±1..±k_max}.
Ellipticity2DReport ellipticity_scan_2d(double omega0, KhConvention convention, int k_max);

struct Ellipticity3DReport {
  std::vector<double> theta;
  std::vector<double> ratio;  ///< max |eigenvalue| / |k|
  double min_ratio = 0.0;
  double argmin_theta = 0.0;
};

/// Direction samples θᵢ = 2πi/samples at |k| = kmag; needs samples ≥ 16.
Ellipticity3DReport ellipticity_scan_3d(const Vec3& omega0, int samples, double kmag = 1.0);

}  // namespace shearlab
