#include "shearlab/kh_stability.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "shearlab/errors.hpp"

namespace shearlab {

namespace {

void sort_spectrum(Spectrum4& s) {
  std::sort(s.begin(), s.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

Spectrum4 cluster_average(const Spectrum4& raw, double radius) {
  std::array<int, 4> label{0, 1, 2, 3};
  // Single linkage: merge labels while any cross-cluster pair is within radius.
  bool merged = true;
  while (merged) {
    merged = false;
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        if (label[i] != label[j] && std::abs(raw[i] - raw[j]) <= radius) {
          const int from = label[j];
          for (auto& l : label) {
            if (l == from) l = label[i];
          }
          merged = true;
        }
      }
    }
  }
  Spectrum4 out{};
  for (int i = 0; i < 4; ++i) {
    Complex sum{0.0, 0.0};
    int count = 0;
    for (int j = 0; j < 4; ++j) {
      if (label[j] == label[i]) {
        sum += raw[j];
        ++count;
      }
    }
    out[i] = sum / static_cast<double>(count);
  }
  return out;
}

}  // namespace

const char* to_string(KhConvention c) {
  return c == KhConvention::first_order ? "first_order" : "second_order";
}

Mat2 mode2d_matrix(int k, double omega0, KhConvention convention) {
  if (k == 0) throw ZeroMode("mode k = 0 carries no dynamics");
  const double wave = kTwoPi * std::abs(k);
  Mat2 m = Mat2::Zero();
  if (convention == KhConvention::first_order) {
    m(0, 1) = omega0 * wave;
    m(1, 0) = wave;
  } else {
    m(0, 1) = 1.0;
    m(1, 0) = omega0 * omega0 * wave * wave;
  }
  return m;
}

double growth_rate(int k, double omega0, KhConvention convention) {
  const Mat2 m = mode2d_matrix(k, omega0, convention);
  return std::sqrt(std::max(0.0, m(0, 1) * m(1, 0)));
}

Mat2 expm_offdiagonal(double a, double b, double t) {
  const double ab = a * b;
  Mat2 e;
  if (ab > 0.0) {
    const double r = std::sqrt(ab);
    const double c = std::cosh(r * t);
    const double s = std::sinh(r * t) / r;
    e << c, a * s, b * s, c;
  } else if (ab < 0.0) {
    const double r = std::sqrt(-ab);
    const double c = std::cos(r * t);
    const double s = std::sin(r * t) / r;
    e << c, a * s, b * s, c;
  } else {
    e << 1.0, a * t, b * t, 1.0;
  }
  return e;
}

Vec2c evolve_mode2d(const Mode2D& mode, KhConvention convention, double t) {
  const Mat2 m = mode2d_matrix(mode.k, mode.omega0, convention);
  return expm_offdiagonal(m(0, 1), m(1, 0), t).cast<Complex>() * mode.state;
}

double hadamard_slope(double omega0, KhConvention convention, int k_max) {
  if (k_max < 2) throw InvalidParameters("slope fit needs k_max >= 2");
  std::vector<double> x;
  std::vector<double> y;
  for (int k = 1; k <= k_max; ++k) {
    const double s = growth_rate(k, omega0, convention);
    if (!(s > 0.0)) throw DegenerateData("growth rate vanishes; no slope to fit");
    x.push_back(std::log(static_cast<double>(k)));
    y.push_back(std::log(s));
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxy / sxx;
}

StabilityMatrix3D assemble_3d_matrix(double kmag, double theta, const Vec3& omega0) {
  if (!(kmag > 0.0)) throw InvalidParameters("|k| must be positive");
  if (omega0(2) != 0.0) throw InvalidBackground("background density must lie in the sheet plane");
  const Complex i{0.0, 1.0};
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double big_k = kmag * kmag * omega0.head<2>().squaredNorm();
  const double p = kmag * (omega0(0) * c + omega0(1) * s);
  StabilityMatrix3D m;
  m.kmag = kmag;
  m.theta = theta;
  m.omega0 = omega0;
  auto& a = m.entries;
  a.setZero();
  a(0, 1) = 0.5 * i * s;
  a(0, 2) = -0.5 * i * c;
  a(1, 0) = -0.5 * i * big_k * s;
  a(1, 3) = 0.5 * p * s;
  a(2, 0) = 0.5 * i * big_k * c;
  a(2, 3) = -0.5 * p * c;
  a(3, 1) = -0.5 * p * s;
  a(3, 2) = 0.5 * p * c;
  return m;
}

double wedge_magnitude(double kmag, double theta, const Vec3& omega0) {
  return std::abs(kmag * (std::cos(theta) * omega0(1) - std::sin(theta) * omega0(0)));
}

double multiset_distance(const Spectrum4& a, const Spectrum4& b) {
  std::array<int, 4> perm{0, 1, 2, 3};
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

SpectrumReport spectrum_3d(const StabilityMatrix3D& m) {
  SpectrumReport r;
  // Rescaling x̂₃ by |k||ω̃⁰| is a similarity that balances row 1 against
  // column 1 without changing the spectrum.
  const double scale = m.kmag * m.omega0.head<2>().norm();
  Mat4c a = m.entries;
  if (scale > 0.0) {
    a.row(0) *= scale;
    a.col(0) /= scale;
  }
  // Extended precision: near k ∥ ω̃⁰ all four eigenvalues crowd around 0 and
  // double precision alone loses several digits.
  using WideC = std::complex<long double>;
  const Eigen::Matrix<WideC, 4, 4> wide = a.cast<WideC>();
  Eigen::ComplexEigenSolver<Eigen::Matrix<WideC, 4, 4>> solver(wide, false);
  for (int i = 0; i < 4; ++i) {
    const WideC e = solver.eigenvalues()(i);
    r.raw[static_cast<std::size_t>(i)] = Complex(static_cast<double>(e.real()), static_cast<double>(e.imag()));
  }
  sort_spectrum(r.raw);
  const double radius =
      8.0 * std::cbrt(std::numeric_limits<double>::epsilon()) * a.norm();
  r.eigenvalues = cluster_average(r.raw, radius);
  sort_spectrum(r.eigenvalues);
  const double half = 0.5 * wedge_magnitude(m.kmag, m.theta, m.omega0);
  r.predicted = {Complex(-half, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(half, 0.0)};
  sort_spectrum(r.predicted);
  r.max_deviation = multiset_distance(r.eigenvalues, r.predicted);
  r.raw_deviation = multiset_distance(r.raw, r.predicted);
  r.trace = m.entries.trace();
  return r;
}

Ellipticity2DReport ellipticity_scan_2d(double omega0, KhConvention convention, int k_max) {
  if (2 * k_max < 16) throw InvalidParameters("ellipticity scan needs at least 16 directions");
  Ellipticity2DReport rep;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  for (int k = -k_max; k <= k_max; ++k) {
    if (k == 0) continue;
    const double ratio = growth_rate(k, omega0, convention) / (kTwoPi * std::abs(k));
    rep.k.push_back(k);
    rep.ratio.push_back(ratio);
    if (ratio < rep.min_ratio - 1e-12) {
      rep.min_ratio = ratio;
      rep.argmin_k = k;
    }
  }
  return rep;
}

Ellipticity3DReport ellipticity_scan_3d(const Vec3& omega0, int samples, double kmag) {
  if (samples < 16) throw InvalidParameters("ellipticity scan needs at least 16 directions");
  Ellipticity3DReport rep;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double theta = kTwoPi * i / samples;
    const SpectrumReport s = spectrum_3d(assemble_3d_matrix(kmag, theta, omega0));
    double largest = 0.0;
    for (const auto& e : s.eigenvalues) largest = std::max(largest, std::abs(e));
    const double ratio = largest / kmag;
    rep.theta.push_back(theta);
    rep.ratio.push_back(ratio);
    if (ratio < rep.min_ratio - 1e-12) {
      rep.min_ratio = ratio;
      rep.argmin_theta = theta;
    }
  }
  return rep;
}

}  // namespace shearlab
