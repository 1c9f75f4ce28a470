#include "shearlab/weak_form.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "shearlab/errors.hpp"
#include "shearlab/fft.hpp"
#include "shearlab/parallel.hpp"
#include "shearlab/quadrature.hpp"

namespace shearlab {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_quadrature(const QuadratureSpec& quad) {
  if (quad.n < 4) throw InvalidParameters("quadrature needs N >= 4");
  if (quad.q < 2) throw InvalidParameters("quadrature needs q >= 2");
  if (!(quad.t_end > 0.0)) throw InvalidParameters("quadrature needs T_end > 0");
}

double grid_point(int j, int n, double offset) {
  return (static_cast<double>(j) + offset) / static_cast<double>(n);
}

// e^{2πik·x_j} on the shifted 1d grid for every k in [−kmax, kmax].
class PhaseTable {
 public:
  PhaseTable(int kmax, int n, double offset) : kmax_(kmax), n_(n) {
    table_.resize(static_cast<std::size_t>(2 * kmax + 1) * static_cast<std::size_t>(n));
    for (int k = -kmax; k <= kmax; ++k) {
      for (int j = 0; j < n; ++j) {
        const double arg = kTwoPi * static_cast<double>(k) * grid_point(j, n, offset);
        table_[index(k, j)] = Complex(std::cos(arg), std::sin(arg));
      }
    }
  }
  Complex operator()(int k, int j) const { return table_[index(k, j)]; }

 private:
  std::size_t index(int k, int j) const {
    return static_cast<std::size_t>(k + kmax_) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(j);
  }
  int kmax_;
  int n_;
  std::vector<Complex> table_;
};

// Normalized trapezoid sum of e^{2πik₃x₃} over the shifted x₃ grid.
Complex x3_factor(int k3, int n, double offset) {
  if (k3 % n != 0) return {0.0, 0.0};
  const double arg = kTwoPi * static_cast<double>(k3) * offset / static_cast<double>(n);
  return {std::cos(arg), std::sin(arg)};
}

struct PreparedMode {
  int k1;
  int k2;
  int k3;
  Complex c1;
  Complex c3;
  Complex z3;
};

}  // namespace

double TimeWindow::operator()(double t) const {
  const double s = (t - center) / radius;
  if (std::abs(s) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

double TimeWindow::derivative(double t) const {
  const double s = (t - center) / radius;
  if (std::abs(s) >= 1.0) return 0.0;
  const double g = 1.0 - s * s;
  return (*this)(t) * (-2.0 * s / (g * g)) / radius;
}

TestFunction::TestFunction(std::vector<TestMode> modes, TimeWindow window)
    : modes_(std::move(modes)), window_(window) {
  if (!(window_.radius > 0.0)) throw InvalidParameters("time window radius must be positive");
  for (auto& m : modes_) {
    const Eigen::Vector3d k = m.k.cast<double>();
    const double kk = k.squaredNorm();
    if (kk > 0.0) {
      const Complex kc = k(0) * m.c(0) + k(1) * m.c(1) + k(2) * m.c(2);
      m.c -= k.cast<Complex>() * (kc / kk);
    }
  }
}

Vec3 TestFunction::value(const Point3& x, double t) const {
  Vec3 out = Vec3::Zero();
  for (const auto& m : modes_) {
    const double arg = kTwoPi * m.k.cast<double>().dot(x);
    const Complex e(std::cos(arg), std::sin(arg));
    out += (m.c * e).real();
  }
  return out * window_(t);
}

Vec3 TestFunction::time_derivative(const Point3& x, double t) const {
  const double w = window_(t);
  if (w == 0.0) return Vec3::Zero();
  return value(x, t) * (window_.derivative(t) / w);
}

Mat3 TestFunction::gradient(const Point3& x, double t) const {
  Mat3 out = Mat3::Zero();
  for (const auto& m : modes_) {
    const Eigen::Vector3d k = m.k.cast<double>();
    const double arg = kTwoPi * k.dot(x);
    const Complex e(std::cos(arg), std::sin(arg));
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        out(i, j) += (m.c(i) * kI * kTwoPi * k(j) * e).real();
      }
    }
  }
  return out * window_(t);
}

TestFunction TestFunction::combine(double a, const TestFunction& phi, double b,
                                   const TestFunction& psi) {
  if (phi.window_.center != psi.window_.center || phi.window_.radius != psi.window_.radius) {
    throw InvalidParameters("combined test functions must share a time window");
  }
  std::vector<TestMode> modes;
  for (auto m : phi.modes_) {
    m.c *= a;
    modes.push_back(m);
  }
  for (auto m : psi.modes_) {
    m.c *= b;
    modes.push_back(m);
  }
  return TestFunction(std::move(modes), phi.window_);
}

std::vector<double> weak_residuals(const ShearFlow& flow, const std::vector<TestFunction>& basis,
                                   const QuadratureSpec& quad) {
  check_quadrature(quad);
  const int n = quad.n;
  const std::size_t nf = basis.size();
  if (nf == 0) return {};

  int kmax = 0;
  std::vector<std::vector<PreparedMode>> prepared(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    for (const auto& m : basis[f].modes()) {
      kmax = std::max({kmax, std::abs(m.k(0)), std::abs(m.k(1))});
      prepared[f].push_back(
          {m.k(0), m.k(1), m.k(2), m.c(0), m.c(2), x3_factor(m.k(2), n, quad.offset)});
    }
  }
  const PhaseTable phase(kmax, n, quad.offset);
  // Each window gets its own rule on [0, min(T_end, end of support)], so the
  // nodes never straddle the flat tail of the bump.
  std::vector<QuadratureRule> rules;
  rules.reserve(nf);
  for (const auto& phi : basis) {
    const double stop = std::min(quad.t_end, phi.window().end());
    rules.push_back(stop > 0.0 ? gauss_legendre(quad.q, 0.0, stop) : QuadratureRule{});
  }

  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<double> u1(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    x[static_cast<std::size_t>(j)] = grid_point(j, n, quad.offset);
    u1[static_cast<std::size_t>(j)] = flow.u1(x[static_cast<std::size_t>(j)]);
  }

  // Per test function, row r < q·N covers (time node r / N, x₂ row r % N);
  // the last N rows hold the initial-data term.
  const std::size_t per_f = static_cast<std::size_t>(quad.q + 1) * static_cast<std::size_t>(n);
  std::vector<double> partial(per_f * nf, 0.0);
  const double cell = 1.0 / (static_cast<double>(n) * static_cast<double>(n));

  parallel_for(per_f * nf, [&](std::size_t idx) {
    const std::size_t f = idx / per_f;
    const std::size_t r = idx % per_f;
    const int node = static_cast<int>(r / static_cast<std::size_t>(n));
    const int i2 = static_cast<int>(r % static_cast<std::size_t>(n));
    const bool initial = node == quad.q;
    const QuadratureRule& rule = rules[f];
    if (!initial && rule.nodes.empty()) return;
    const double t = initial ? 0.0 : rule.nodes[static_cast<std::size_t>(node)];
    const double weight = initial ? 1.0 : rule.weights[static_cast<std::size_t>(node)];
    const double v1 = u1[static_cast<std::size_t>(i2)];
    const double w = basis[f].window()(t);
    const double dw = basis[f].window().derivative(t);
    Complex acc(0.0, 0.0);
    for (int i1 = 0; i1 < n; ++i1) {
      const double v3 = flow.u3(x[static_cast<std::size_t>(i1)] - t * v1);
      for (const auto& m : prepared[f]) {
        if (m.z3 == Complex(0.0, 0.0)) continue;
        const Complex uc = v1 * m.c1 + v3 * m.c3;
        const Complex e = m.z3 * phase(m.k1, i1) * phase(m.k2, i2);
        if (initial) {
          acc += w * uc * e;
        } else {
          const double ku = static_cast<double>(m.k1) * v1 + static_cast<double>(m.k3) * v3;
          acc += (dw + kI * kTwoPi * ku * w) * uc * e;
        }
      }
    }
    partial[idx] = weight * cell * acc.real();
  });

  std::vector<double> out(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    const std::vector<double> column(partial.begin() + static_cast<std::ptrdiff_t>(f * per_f),
                                     partial.begin() + static_cast<std::ptrdiff_t>((f + 1) * per_f));
    out[f] = compensated_sum(column);
  }
  return out;
}

double weak_residual(const ShearFlow& flow, const TestFunction& phi, const QuadratureSpec& quad) {
  return weak_residuals(flow, {phi}, quad).front();
}

WeakResidualStudy weak_residual_study(const ShearFlow& flow,
                                      const std::vector<TestFunction>& basis,
                                      const QuadratureSpec& quad) {
  WeakResidualStudy study;
  QuadratureSpec fine = quad;
  fine.n = 2 * quad.n;
  study.coarse = weak_residuals(flow, basis, quad);
  study.fine = weak_residuals(flow, basis, fine);
  double sq_coarse = 0.0;
  double sq_fine = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double a = std::abs(study.coarse[i]);
    const double b = std::abs(study.fine[i]);
    study.max_coarse = std::max(study.max_coarse, a);
    study.max_fine = std::max(study.max_fine, b);
    sq_coarse += a * a;
    sq_fine += b * b;
    if (std::abs(study.fine[i] - study.coarse[i]) > 0.5 * a && a > 1e-14) {
      study.under_resolved = true;
    }
  }
  if (!basis.empty()) {
    study.rms_coarse = std::sqrt(sq_coarse / static_cast<double>(basis.size()));
    study.rms_fine = std::sqrt(sq_fine / static_cast<double>(basis.size()));
  }
  return study;
}

double TrigFactor::operator()(double x) const {
  return std::cos(kTwoPi * static_cast<double>(mode) * x + phase);
}

FubiniResult fubini_check(const ProfileFunction& u1, const ProfileFunction& u3,
                          const FubiniFactors& phis, const QuadratureSpec& quad) {
  check_quadrature(quad);
  const int n = quad.n;
  const auto un = static_cast<std::size_t>(n);
  const QuadratureRule rule = gauss_legendre(quad.q, 0.0, quad.t_end);
  std::vector<double> x(un);
  std::vector<double> v1(un);
  std::vector<double> f1(un);
  std::vector<double> f2(un);
  double i3 = 0.0;
  for (std::size_t j = 0; j < un; ++j) {
    x[j] = grid_point(static_cast<int>(j), n, quad.offset);
    v1[j] = u1(x[j]);
    f1[j] = phis.phi1(x[j]);
    f2[j] = phis.phi2(x[j]);
    i3 += phis.phi3(x[j]);
  }
  i3 /= static_cast<double>(n);
  std::vector<double> v3(un);
  for (std::size_t j = 0; j < un; ++j) v3[j] = u3(x[j]);

  const std::size_t rows = static_cast<std::size_t>(quad.q) * un;
  std::vector<double> lhs(rows);
  std::vector<double> rhs(rows);
  const double cell = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  parallel_for(rows, [&](std::size_t r) {
    const std::size_t node = r / un;
    const std::size_t i2 = r % un;
    const double t = rule.nodes[node];
    const double scale = rule.weights[node] * phis.phi4(t) * f2[i2] * i3 * cell;
    double a = 0.0;
    double b = 0.0;
    for (std::size_t i1 = 0; i1 < un; ++i1) {
      a += u3(x[i1] - t * v1[i2]) * f1[i1];
      b += v3[i1] * phis.phi1(x[i1] + t * v1[i2]);
    }
    lhs[r] = scale * a;
    rhs[r] = scale * b;
  });
  return {compensated_sum(lhs), compensated_sum(rhs)};
}

double divergence_residual(const std::function<Vec3(const Point3&)>& field, int n,
                           int max_mode, double offset) {
  if (n < 2 * max_mode + 1) throw InvalidParameters("grid too coarse for the requested modes");
  const auto un = static_cast<std::size_t>(n);
  std::vector<std::vector<Complex>> comp(3, std::vector<Complex>(un * un * un));
  parallel_for(un, [&](std::size_t i0) {
    for (std::size_t i1 = 0; i1 < un; ++i1) {
      for (std::size_t i2 = 0; i2 < un; ++i2) {
        const Point3 p(grid_point(static_cast<int>(i0), n, offset),
                       grid_point(static_cast<int>(i1), n, offset),
                       grid_point(static_cast<int>(i2), n, offset));
        const Vec3 u = field(p);
        const std::size_t idx = (i0 * un + i1) * un + i2;
        for (int c = 0; c < 3; ++c) comp[static_cast<std::size_t>(c)][idx] = u(c);
      }
    }
  });
  for (auto& c : comp) dft_inplace(c, {n, n, n}, +1);
  auto wrap = [n](int k) { return static_cast<std::size_t>(((k % n) + n) % n); };
  double worst = 0.0;
  const double volume = static_cast<double>(n) * n * n;
  for (int a = -max_mode; a <= max_mode; ++a) {
    for (int b = -max_mode; b <= max_mode; ++b) {
      for (int c = -max_mode; c <= max_mode; ++c) {
        const std::size_t idx = (wrap(a) * un + wrap(b)) * un + wrap(c);
        const Complex s = static_cast<double>(a) * comp[0][idx] +
                          static_cast<double>(b) * comp[1][idx] +
                          static_cast<double>(c) * comp[2][idx];
        worst = std::max(worst, kTwoPi * std::abs(s) / volume);
      }
    }
  }
  return worst;
}

double divergence_residual(const ShearFlow& flow, double t, int n, int max_mode) {
  // The flow does not depend on x₃, so only k₃ = 0 survives the x₃ sum and the
  // 3d transform reduces to a 2d one over (x₁, x₂).
  if (n < 2 * max_mode + 1) throw InvalidParameters("grid too coarse for the requested modes");
  const auto un = static_cast<std::size_t>(n);
  std::vector<Complex> c1(un * un);
  std::vector<Complex> c3(un * un);
  parallel_for(un, [&](std::size_t i1) {
    for (std::size_t i2 = 0; i2 < un; ++i2) {
      const Point3 p(grid_point(static_cast<int>(i1), n, kGoldenFraction),
                     grid_point(static_cast<int>(i2), n, kGoldenFraction), 0.0);
      const Vec3 u = eval_velocity(flow, p, t);
      c1[i1 * un + i2] = u(0);
      c3[i1 * un + i2] = u(2);
    }
  });
  dft_inplace(c1, {n, n}, +1);
  auto wrap = [n](int k) { return static_cast<std::size_t>(((k % n) + n) % n); };
  double worst = 0.0;
  const double area = static_cast<double>(n) * n;
  for (int a = -max_mode; a <= max_mode; ++a) {
    for (int b = -max_mode; b <= max_mode; ++b) {
      const Complex s = static_cast<double>(a) * c1[wrap(a) * un + wrap(b)];
      worst = std::max(worst, kTwoPi * std::abs(s) / area);
    }
  }
  return worst;
}

std::vector<TestFunction> generate_test_basis(int max_mode, int count, std::uint64_t seed) {
  if (max_mode < 1) throw InvalidParameters("max_mode must be at least 1");
  if (count < 0) throw InvalidParameters("count must be nonnegative");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(-max_mode, max_mode);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<TestFunction> basis;
  basis.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Wavevector k;
    do {
      k = Wavevector(pick(rng), pick(rng), pick(rng));
    } while (k.isZero());
    Vec3c c;
    for (int j = 0; j < 3; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      c(j) = Complex(re, im);
    }
    const Eigen::Vector3d kd = k.cast<double>();
    c -= kd.cast<Complex>() * ((kd(0) * c(0) + kd(1) * c(1) + kd(2) * c(2)) / kd.squaredNorm());
    c /= c.norm();
    const double radius = 0.5 + 0.5 * unit(rng);
    const double center = (1.0 - radius) * unit(rng);
    basis.emplace_back(std::vector<TestMode>{{k, c}}, TimeWindow{center, radius});
  }
  return basis;
}

}  // namespace shearlab
