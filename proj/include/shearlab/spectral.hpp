#pragma once

#include <functional>
#include <vector>

#include "shearlab/fft.hpp"

namespace shearlab {

/// N uniform nodes j/N on [0, 1), N a power of two ≥ 8.
class PeriodicGrid {
 public:
  explicit PeriodicGrid(int n);
  int size() const { return n_; }
  double spacing() const { return 1.0 / n_; }
  double point(int j) const { return static_cast<double>(j) / n_; }
  std::vector<double> sample(const std::function<double(double)>& f) const;

 private:
  int n_;
};

/// Coefficients f̂(k) = (1/N) Σⱼ f(j/N) e^{−2πikj/N} for k = −N/2..N/2−1.
class SpectralField {
 public:
  static SpectralField from_samples(const std::vector<double>& values);
  static SpectralField from_function(const std::function<double(double)>& f, const PeriodicGrid& grid);

  int size() const { return static_cast<int>(coeffs_.size()); }
  Complex coefficient(int k) const;
  void set_coefficient(int k, Complex value);

  /// Real part of the inverse transform on the grid nodes.
  std::vector<double> samples() const;

  /// Coefficient-wise product with m(k).
  SpectralField multiply(const std::function<Complex(int)>& m) const;

 private:
  explicit SpectralField(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {}
  std::size_t slot(int k) const;

  std::vector<Complex> coeffs_;
};

/// Multiplier −i·sgn(k); the mean and Nyquist modes are zeroed.
SpectralField hilbert_transform(const SpectralField& f);

/// Multiplier |2πk|; the mean and Nyquist modes are zeroed.
SpectralField abs_derivative(const SpectralField& f);

/// Multiplier 2πik; the Nyquist mode is zeroed.
SpectralField derivative(const SpectralField& f);

/// Σ_{m∈ℤ} (d + m)^{−(2n+2)} for d in (0, 1).
double lattice_kernel(double d, int n);

/// (−1)ⁿ (1/π) P.V.∫ (f(x) − f(x′)) (y(x) − y(x′))^{2n} / (x − x′)^{2n+2} dx′
/// over the real line, periodic data. Punctured trapezoid rule on the lattice
/// kernel plus the diagonal limit −½(f′·y′^{2n})′, so n = 0 reproduces |D|f.
SpectralField pv_expansion_term(const SpectralField& f, const SpectralField& y, int n);

/// (1/π) P.V.∫ (f(x) − f(x′)) / ((x − x′)² + ε²(y(x) − y(x′))²) dx′ over the
/// real line, periodic data; the sum over n of ε^{2n} times the expansion terms.
SpectralField pv_full_kernel(const SpectralField& f, const SpectralField& y, double eps);

}  // namespace shearlab
