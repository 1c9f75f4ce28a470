#include "shearlab/spectral.hpp"

#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/polygamma.hpp>
#include <cmath>

#include "shearlab/errors.hpp"
#include "shearlab/parallel.hpp"
#include "shearlab/types.hpp"

namespace shearlab {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

PeriodicGrid::PeriodicGrid(int n) : n_(n) {
  if (n < 8 || !power_of_two(n)) throw InvalidParameters("grid size must be a power of two >= 8");
}

std::vector<double> PeriodicGrid::sample(const std::function<double(double)>& f) const {
  std::vector<double> v(static_cast<std::size_t>(n_));
  for (int j = 0; j < n_; ++j) v[static_cast<std::size_t>(j)] = f(point(j));
  return v;
}

SpectralField SpectralField::from_samples(const std::vector<double>& values) {
  const int n = static_cast<int>(values.size());
  if (n < 8 || !power_of_two(n)) throw InvalidParameters("grid size must be a power of two >= 8");
  std::vector<Complex> c(values.begin(), values.end());
  dft_inplace(c, {n}, -1);
  for (auto& v : c) v /= static_cast<double>(n);
  return SpectralField(std::move(c));
}

SpectralField SpectralField::from_function(const std::function<double(double)>& f,
                                           const PeriodicGrid& grid) {
  return from_samples(grid.sample(f));
}

std::size_t SpectralField::slot(int k) const {
  const int n = size();
  if (k < -n / 2 || k >= n / 2) throw InvalidParameters("wavenumber outside the grid band");
  return static_cast<std::size_t>(k < 0 ? k + n : k);
}

Complex SpectralField::coefficient(int k) const { return coeffs_[slot(k)]; }

void SpectralField::set_coefficient(int k, Complex value) { coeffs_[slot(k)] = value; }

std::vector<double> SpectralField::samples() const {
  std::vector<Complex> c = coeffs_;
  dft_inplace(c, {size()}, +1);
  std::vector<double> out(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) out[j] = c[j].real();
  return out;
}

SpectralField SpectralField::multiply(const std::function<Complex(int)>& m) const {
  std::vector<Complex> c = coeffs_;
  const int n = size();
  for (int k = -n / 2; k < n / 2; ++k) c[slot(k)] *= m(k);
  return SpectralField(std::move(c));
}

SpectralField hilbert_transform(const SpectralField& f) {
  const int nyquist = -f.size() / 2;
  return f.multiply([nyquist](int k) {
    if (k == 0 || k == nyquist) return Complex(0.0, 0.0);
    return Complex(0.0, k > 0 ? -1.0 : 1.0);
  });
}

SpectralField abs_derivative(const SpectralField& f) {
  const int nyquist = -f.size() / 2;
  return f.multiply([nyquist](int k) {
    if (k == nyquist) return Complex(0.0, 0.0);
    return Complex(kTwoPi * std::abs(k), 0.0);
  });
}

SpectralField derivative(const SpectralField& f) {
  const int nyquist = -f.size() / 2;
  return f.multiply([nyquist](int k) {
    if (k == nyquist) return Complex(0.0, 0.0);
    return Complex(0.0, kTwoPi * k);
  });
}

double lattice_kernel(double d, int n) {
  if (!(d > 0.0 && d < 1.0)) throw InvalidParameters("lattice kernel needs d in (0, 1)");
  if (n == 0) {
    const double s = std::sin(kPi * d);
    return kPi * kPi / (s * s);
  }
  const int order = 2 * n + 1;
  return (boost::math::polygamma(order, d) + boost::math::polygamma(order, 1.0 - d)) /
         boost::math::factorial<double>(static_cast<unsigned>(order));
}

SpectralField pv_expansion_term(const SpectralField& f, const SpectralField& y, int n) {
  if (n < 0) throw InvalidParameters("expansion order must be nonnegative");
  if (n > 4) throw ExpansionOrderTooHigh("expansion order above 4 exceeds the quadrature budget");
  if (f.size() != y.size()) throw InvalidParameters("f and y must share a grid");
  const int size = f.size();
  const auto un = static_cast<std::size_t>(size);
  const double h = 1.0 / size;
  const std::vector<double> fv = f.samples();
  const std::vector<double> yv = y.samples();
  const std::vector<double> fp = derivative(f).samples();
  const std::vector<double> yp = derivative(y).samples();
  std::vector<double> g(un);
  for (std::size_t j = 0; j < un; ++j) g[j] = fp[j] * std::pow(yp[j], 2 * n);
  const std::vector<double> gp = derivative(SpectralField::from_samples(g)).samples();

  std::vector<double> kernel(un, 0.0);
  for (std::size_t lag = 1; lag < un; ++lag) {
    kernel[lag] = lattice_kernel(static_cast<double>(lag) * h, n);
  }
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  std::vector<double> out(un);
  parallel_for(un, [&](std::size_t i) {
    double acc = -0.5 * gp[i];
    for (std::size_t j = 0; j < un; ++j) {
      if (j == i) continue;
      const double dy = yv[i] - yv[j];
      acc += (fv[i] - fv[j]) * std::pow(dy, 2 * n) * kernel[(i + un - j) % un];
    }
    out[i] = sign / kPi * h * acc;
  });
  return SpectralField::from_samples(out);
}

SpectralField pv_full_kernel(const SpectralField& f, const SpectralField& y, double eps) {
  if (f.size() != y.size()) throw InvalidParameters("f and y must share a grid");
  const int size = f.size();
  const auto un = static_cast<std::size_t>(size);
  const double h = 1.0 / size;
  const std::vector<double> fv = f.samples();
  const std::vector<double> yv = y.samples();
  const std::vector<double> fp = derivative(f).samples();
  const std::vector<double> yp = derivative(y).samples();
  std::vector<double> g(un);
  for (std::size_t j = 0; j < un; ++j) g[j] = fp[j] / (1.0 + eps * eps * yp[j] * yp[j]);
  const std::vector<double> gp = derivative(SpectralField::from_samples(g)).samples();
  std::vector<double> out(un);
  parallel_for(un, [&](std::size_t i) {
    double acc = -0.5 * gp[i];
    for (std::size_t j = 0; j < un; ++j) {
      if (j == i) continue;
      const double d = static_cast<double>((i + un - j) % un) * h;
      const double c = eps * std::abs(yv[i] - yv[j]);
      // Σ_m 1/((d + m)² + c²) in closed form.
      const double kernel =
          c > 0.0 ? kPi * std::sinh(kTwoPi * c) /
                        (c * (std::cosh(kTwoPi * c) - std::cos(kTwoPi * d)))
                  : lattice_kernel(d, 0);
      acc += (fv[i] - fv[j]) * kernel;
    }
    out[i] = h * acc / kPi;
  });
  return SpectralField::from_samples(out);
}

}  // namespace shearlab
