#pragma once

#include <functional>
#include <string>
#include <vector>

#include "shearlab/profile.hpp"
#include "shearlab/shear_flow.hpp"

namespace shearlab {

/// Uniform samples f(start + j·spacing), j = 0..N−1. A periodic sample covers
/// one period and wraps; a window sample only pairs points inside the window.
class Sampled1D {
 public:
  Sampled1D(std::vector<double> values, double spacing, double start, bool periodic);

  /// N samples of a 1-periodic function on j/N (plus offset·spacing).
  static Sampled1D periodic(const std::function<double(double)>& f, std::size_t n,
                            double offset = 0.0);
  /// Samples on [a, b] with spacing h, endpoints included.
  static Sampled1D window(const std::function<double(double)>& f, double a, double b, double h);

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double spacing() const { return spacing_; }
  double start() const { return start_; }
  bool is_periodic() const { return periodic_; }

 private:
  std::vector<double> values_;
  double spacing_;
  double start_;
  bool periodic_;
};

struct ModulusEstimate {
  double exponent = 0.0;
  double constant = 0.0;
  double fit_residual = 0.0;
  double h_min = 0.0;
  double h_max = 0.0;
  int levels = 0;
  /// S(h) vanished on every level; exponent is reported as the 1.5 cap.
  bool degenerate = false;
  std::vector<double> h;
  std::vector<double> s;
};

/// max over x of |f(x + h) − f(x)|, h a positive multiple of the spacing.
double structure_function(const Sampled1D& f, double h);

/// Least-squares slope of log S(h) against log h over dyadic h in
/// [h_min, h_max], h = h_min·2^j. Needs h_min ≥ 4 spacings and ≥ 6 levels.
ModulusEstimate holder_exponent(const Sampled1D& f, double h_min, double h_max);

/// max over sample pairs of |f(x) − f(y)| / |x − y|^α.
double holder_seminorm_lower(const Sampled1D& f, double alpha);

/// Traces through the origin used to read off the Hölder exponent of a flow.
struct TraceExponents {
  ModulusEstimate u1_along_x2;  ///< x₂ ↦ u₁(x₂)
  ModulusEstimate u3_along_x1;  ///< x₁ ↦ u₃(x₁ − t·u₁(0))
  ModulusEstimate u3_along_x2;  ///< x₂ ↦ u₃(−t·u₁(x₂))
  double exponent = 0.0;        ///< minimum over the non-degenerate traces
};

/// The x₂ traces are restricted to |x₂| ≤ 1/8; h ranges over dyadic
/// increments from 4/N to 2⁻⁶.
TraceExponents flow_holder_exponents(const ShearFlow& flow, double t, std::size_t n);

/// Samples of x₂ ↦ u₃(x₁ − t·u₁(x₂)) at fixed x₁ on |x₂| ≤ half_width.
Sampled1D shear_trace(const ShearFlow& flow, double x1, double t, std::size_t n,
                      double half_width);

/// Trapezoid approximation of ∫ |u(x, t)|² over the torus on the shifted N² grid.
double energy(const ShearFlow& flow, double t, std::size_t n);

/// 2·E(2N) − E(N).
double energy_richardson(const ShearFlow& flow, double t, std::size_t n);

/// (∫ |u|ᵖ + |∇u|ᵖ dx)^{1/p} with Euclidean |u| and Frobenius |∇u|.
double sobolev_w1p(const ShearFlow& flow, double t, double p, std::size_t n);

struct BesovLevel {
  int j = 0;
  double block_sup = 0.0;  ///< ‖Δⱼf‖_∞
  double weighted = 0.0;   ///< 2^{js}‖Δⱼf‖_∞
};

/// Blocks Δ₀ = {k = 0}, Δⱼ = {2^{j−1} ≤ |k| < 2^j}; needs a periodic sample
/// with 2^{j_max+1} ≤ N/2.
std::vector<BesovLevel> besov_levels(const Sampled1D& f, double s, int j_max);
double besov_seminorm(const Sampled1D& f, double s, int j_max);

}  // namespace shearlab
