#include "shearlab/norms.hpp"

#include <algorithm>
#include <cmath>

#include "shearlab/errors.hpp"
#include "shearlab/fft.hpp"
#include "shearlab/parallel.hpp"
#include "shearlab/quadrature.hpp"
#include "shearlab/types.hpp"

namespace shearlab {

namespace {

std::size_t lag_for(const Sampled1D& f, double h) {
  const double steps = h / f.spacing();
  const double rounded = std::round(steps);
  if (!(rounded >= 1.0) || std::abs(steps - rounded) > 1e-9 * std::max(1.0, steps)) {
    throw InvalidParameters("increment must be a positive multiple of the grid spacing");
  }
  return static_cast<std::size_t>(rounded);
}

double max_increment(const Sampled1D& f, std::size_t lag) {
  const auto& v = f.values();
  const std::size_t n = v.size();
  double worst = 0.0;
  if (f.is_periodic()) {
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max(worst, std::abs(v[(i + lag) % n] - v[i]));
    }
  } else {
    for (std::size_t i = 0; i + lag < n; ++i) {
      worst = std::max(worst, std::abs(v[i + lag] - v[i]));
    }
  }
  return worst;
}

double grid_point(std::size_t j, std::size_t n) {
  return (static_cast<double>(j) + kGoldenFraction) / static_cast<double>(n);
}

// Row sums over x₁ for every x₂ row, reduced in row order.
double grid_mean(std::size_t n, const std::function<double(std::size_t, std::size_t)>& g) {
  std::vector<double> rows(n);
  parallel_for(n, [&](std::size_t i2) {
    double acc = 0.0;
    for (std::size_t i1 = 0; i1 < n; ++i1) acc += g(i1, i2);
    rows[i2] = acc;
  });
  return compensated_sum(rows) / (static_cast<double>(n) * static_cast<double>(n));
}

}  // namespace

Sampled1D::Sampled1D(std::vector<double> values, double spacing, double start, bool periodic)
    : values_(std::move(values)), spacing_(spacing), start_(start), periodic_(periodic) {
  if (values_.size() < 2) throw InvalidParameters("sample needs at least two values");
  if (!(spacing_ > 0.0)) throw InvalidParameters("sample spacing must be positive");
}

Sampled1D Sampled1D::periodic(const std::function<double(double)>& f, std::size_t n,
                              double offset) {
  const double h = 1.0 / static_cast<double>(n);
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = f((static_cast<double>(j) + offset) * h);
  return Sampled1D(std::move(v), h, offset * h, true);
}

Sampled1D Sampled1D::window(const std::function<double(double)>& f, double a, double b,
                            double h) {
  const auto count = static_cast<std::size_t>(std::llround((b - a) / h)) + 1;
  std::vector<double> v(count);
  for (std::size_t j = 0; j < count; ++j) v[j] = f(a + static_cast<double>(j) * h);
  return Sampled1D(std::move(v), h, a, false);
}

double structure_function(const Sampled1D& f, double h) {
  return max_increment(f, lag_for(f, h));
}

ModulusEstimate holder_exponent(const Sampled1D& f, double h_min, double h_max) {
  if (h_min < 4.0 * f.spacing() * (1.0 - 1e-12)) {
    throw InvalidParameters("h_min must be at least 4 grid spacings");
  }
  ModulusEstimate est;
  est.h_min = h_min;
  for (double h = h_min; h <= h_max * (1.0 + 1e-12); h *= 2.0) {
    est.h.push_back(h);
    est.s.push_back(structure_function(f, h));
  }
  est.levels = static_cast<int>(est.h.size());
  est.h_max = est.h.empty() ? h_min : est.h.back();
  if (est.levels < 6) throw InvalidParameters("exponent fit needs at least 6 dyadic levels");

  if (std::all_of(est.s.begin(), est.s.end(), [](double s) { return s == 0.0; })) {
    est.degenerate = true;
    est.exponent = 1.5;
    return est;
  }
  if (std::any_of(est.s.begin(), est.s.end(), [](double s) { return s == 0.0; })) {
    throw DegenerateData("structure function vanishes on some but not all levels");
  }
  double mx = 0.0;
  double my = 0.0;
  const double m = static_cast<double>(est.levels);
  for (int i = 0; i < est.levels; ++i) {
    mx += std::log(est.h[static_cast<std::size_t>(i)]);
    my += std::log(est.s[static_cast<std::size_t>(i)]);
  }
  mx /= m;
  my /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  for (int i = 0; i < est.levels; ++i) {
    const double dx = std::log(est.h[static_cast<std::size_t>(i)]) - mx;
    const double dy = std::log(est.s[static_cast<std::size_t>(i)]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double rss = 0.0;
  for (int i = 0; i < est.levels; ++i) {
    const double r = std::log(est.s[static_cast<std::size_t>(i)]) -
                     (intercept + slope * std::log(est.h[static_cast<std::size_t>(i)]));
    rss += r * r;
  }
  est.exponent = std::clamp(slope, 0.0, 1.5);
  est.constant = std::exp(intercept);
  est.fit_residual = std::sqrt(rss / m);
  return est;
}

double holder_seminorm_lower(const Sampled1D& f, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidParameters("alpha must lie in (0, 1]");
  const std::size_t n = f.size();
  const std::size_t lags = f.is_periodic() ? n / 2 : n - 1;
  std::vector<double> best(lags + 1, 0.0);
  parallel_for(lags, [&](std::size_t i) {
    const std::size_t lag = i + 1;
    // For periodic data the lag and N − lag pair up to the same distance.
    const double d = static_cast<double>(lag) * f.spacing();
    best[lag] = max_increment(f, lag) / std::pow(d, alpha);
  });
  return *std::max_element(best.begin(), best.end());
}

Sampled1D shear_trace(const ShearFlow& flow, double x1, double t, std::size_t n,
                      double half_width) {
  const double h = 1.0 / static_cast<double>(n);
  return Sampled1D::window(
      [&](double x2) { return flow.u3(x1 - t * flow.u1(x2)); }, -half_width, half_width, h);
}

TraceExponents flow_holder_exponents(const ShearFlow& flow, double t, std::size_t n) {
  const double h = 1.0 / static_cast<double>(n);
  const double half_width = 0.125;
  const double h_min = 4.0 * h;
  const double h_max = 1.0 / 64.0;
  TraceExponents out;
  const double shift = t * flow.u1(0.0);
  out.u1_along_x2 = holder_exponent(
      Sampled1D::window([&](double x2) { return flow.u1(x2); }, -half_width, half_width, h),
      h_min, h_max);
  out.u3_along_x1 = holder_exponent(
      Sampled1D::window([&](double x1) { return flow.u3(x1 - shift); }, shift - half_width,
                        shift + half_width, h),
      h_min, h_max);
  out.u3_along_x2 = holder_exponent(shear_trace(flow, 0.0, t, n, half_width), h_min, h_max);
  out.exponent = 1.5;
  for (const auto* e : {&out.u1_along_x2, &out.u3_along_x1, &out.u3_along_x2}) {
    if (!e->degenerate) out.exponent = std::min(out.exponent, e->exponent);
  }
  return out;
}

double energy(const ShearFlow& flow, double t, std::size_t n) {
  std::vector<double> x(n);
  std::vector<double> u1(n);
  for (std::size_t j = 0; j < n; ++j) {
    x[j] = grid_point(j, n);
    u1[j] = flow.u1(x[j]);
  }
  return grid_mean(n, [&](std::size_t i1, std::size_t i2) {
    const double a = u1[i2];
    const double b = flow.u3(x[i1] - t * a);
    return a * a + b * b;
  });
}

double energy_richardson(const ShearFlow& flow, double t, std::size_t n) {
  return 2.0 * energy(flow, t, 2 * n) - energy(flow, t, n);
}

double sobolev_w1p(const ShearFlow& flow, double t, double p, std::size_t n) {
  if (!(p >= 1.0)) throw InvalidParameters("p must be at least 1");
  if (!flow.u1.smooth() || !flow.u3.smooth()) {
    throw NonDifferentiableProfile("W^{1,p} needs differentiable profiles");
  }
  const double mean = grid_mean(n, [&](std::size_t i1, std::size_t i2) {
    const Point3 x(grid_point(i1, n), grid_point(i2, n), 0.0);
    const double u = eval_velocity(flow, x, t).norm();
    const double g = eval_velocity_gradient(flow, x, t).norm();
    return std::pow(u, p) + std::pow(g, p);
  });
  return std::pow(mean, 1.0 / p);
}

std::vector<BesovLevel> besov_levels(const Sampled1D& f, double s, int j_max) {
  if (!f.is_periodic()) throw InvalidParameters("Besov blocks need a periodic sample");
  const std::size_t n = f.size();
  if (j_max < 0 || static_cast<double>(std::size_t{1} << (j_max + 1)) > static_cast<double>(n) / 2) {
    throw InvalidParameters("need 2^(j_max+1) <= N/2");
  }
  std::vector<Complex> coeffs(f.values().begin(), f.values().end());
  dft_inplace(coeffs, {static_cast<int>(n)}, -1);
  for (auto& c : coeffs) c /= static_cast<double>(n);
  const int ni = static_cast<int>(n);
  std::vector<BesovLevel> levels;
  for (int j = 0; j <= j_max; ++j) {
    const int lo = j == 0 ? 0 : 1 << (j - 1);
    const int hi = j == 0 ? 1 : 1 << j;
    std::vector<Complex> block(n, Complex(0.0, 0.0));
    for (int k = lo; k < hi; ++k) {
      block[static_cast<std::size_t>(k)] = coeffs[static_cast<std::size_t>(k)];
      if (k != 0) {
        block[static_cast<std::size_t>(ni - k)] = coeffs[static_cast<std::size_t>(ni - k)];
      }
    }
    dft_inplace(block, {ni}, +1);
    double sup = 0.0;
    for (const auto& b : block) sup = std::max(sup, std::abs(b.real()));
    levels.push_back({j, sup, std::pow(2.0, j * s) * sup});
  }
  return levels;
}

double besov_seminorm(const Sampled1D& f, double s, int j_max) {
  double best = 0.0;
  for (const auto& level : besov_levels(f, s, j_max)) best = std::max(best, level.weighted);
  return best;
}

}  // namespace shearlab
