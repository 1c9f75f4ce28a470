#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "cli.hpp"
#include "shearlab/errors.hpp"
#include "shearlab/kh_stability.hpp"
#include "shearlab/norms.hpp"
#include "shearlab/quadrature.hpp"
#include "shearlab/spectral.hpp"
#include "shearlab/vortex_sheet.hpp"
#include "shearlab/weak_form.hpp"

namespace shearlab::cli {

namespace {

using I64 = std::int64_t;

Json profile_json(const std::string& kind, Json params = Json::object()) {
  Json j = Json::object();
  j["kind"] = kind;
  for (auto& [k, v] : params.items()) j[k] = v;
  return j;
}

std::string tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

struct Line {
  double slope = 0.0;
  double intercept = 0.0;
};

Line fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return {sxy / sxx, my - sxy / sxx * mx};
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigInvalid(what);
}

std::vector<int> sorted_grids(const Params& p, const std::string& key) {
  auto g = p.ints(key);
  require(!g.empty(), key + " must not be empty");
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  for (int n : g) require(n >= 4, key + " entries must be at least 4");
  return g;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double rms(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return v.empty() ? 0.0 : std::sqrt(s / static_cast<double>(v.size()));
}

// ---------------------------------------------------------------- weak-check

Result run_weak_check(const Params& p, std::uint64_t seed) {
  const ShearFlow flow{p.profile("u1"), p.profile("u3")};
  const auto grids = sorted_grids(p, "grids");
  const int ref = p.integer("reference_n");
  require(std::find(grids.begin(), grids.end(), ref) != grids.end(), "reference_n must be one of grids");
  const int q = p.integer("q");
  require(q >= 2, "q must be at least 2");
  const auto basis = generate_test_basis(p.integer("max_mode"), p.integer("basis_count"), seed);
  require(!basis.empty(), "basis_count must be positive");

  Result r;
  Table modes{"basis", {"phi", "k1", "k2", "k3", "window_center", "window_radius"}, {}, {false}};
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& k = basis[i].modes().front().k;
    modes.add({I64(i), I64(k(0)), I64(k(1)), I64(k(2)), basis[i].window().center, basis[i].window().radius});
  }
  Table res{"residuals", {"phi", "N", "q", "R"}, {}, {false}};
  Table conv{"convergence", {"N", "max_abs_R", "rms_R"}, {}, {true, Scale::loglog, "N", {"max_abs_R", "rms_R"}}};
  std::map<int, double> worst;
  std::vector<std::vector<double>> all;
  for (int n : grids) {
    QuadratureSpec quad;
    quad.n = n;
    quad.q = q;
    const auto values = weak_residuals(flow, basis, quad);
    for (std::size_t i = 0; i < values.size(); ++i) res.add({I64(i), I64(n), I64(q), values[i]});
    worst[n] = max_abs(values);
    conv.add({I64(n), worst[n], rms(values)});
    all.push_back(values);
  }
  bool under_resolved = false;
  for (std::size_t g = 0; g + 1 < all.size(); ++g) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (std::abs(all[g + 1][i] - all[g][i]) > 0.5 * std::abs(all[g][i])) under_resolved = true;
    }
  }
  r.checks.push_back(check_at_most("max |R| at N=" + std::to_string(ref), worst[ref], p.num("tol_residual")));
  if (worst.count(2 * ref)) {
    const double ratio = worst[ref] > 0.0 ? worst[2 * ref] / worst[ref] : 0.0;
    r.checks.push_back(check_at_most("max |R| ratio N=" + std::to_string(2 * ref) + " over N=" + std::to_string(ref),
                                     ratio, p.num("max_ratio")));
  }

  Table div{"divergence", {"t", "N", "residual"}, {}, {false}};
  double worst_div = 0.0;
  for (double t : p.nums("divergence_times")) {
    const double d = divergence_residual(flow, t, p.integer("divergence_n"));
    div.add({t, I64(p.integer("divergence_n")), d});
    worst_div = std::max(worst_div, d);
  }
  r.checks.push_back(check_at_most("divergence residual", worst_div, p.num("tol_divergence")));
  r.summary["quadrature_under_resolved"] = under_resolved;
  r.tables = {modes, res, conv, div};
  return r;
}

// ------------------------------------------------------------------- fubini

Result run_fubini(const Params& p, std::uint64_t) {
  const auto u1 = p.profile("u1");
  const auto u3 = p.profile("u3");
  const auto m = p.ints("phi_modes");
  const auto ph = p.nums("phi_phases");
  const auto w = p.nums("window");
  require(m.size() == 3 && ph.size() == 3, "phi_modes and phi_phases need three entries");
  require(w.size() == 2 && w[1] > 0.0 && w[0] + w[1] <= 1.0 && w[0] - w[1] >= 0.0,
          "window must be [center, radius] inside [0, 1]");
  FubiniFactors f{{m[0], ph[0]}, {m[1], ph[1]}, {m[2], ph[2]}, {w[0], w[1]}};
  const auto grids = sorted_grids(p, "grids");
  const int ref = p.integer("reference_n");
  require(std::find(grids.begin(), grids.end(), ref) != grids.end(), "reference_n must be one of grids");

  Result r;
  Table t{"fubini", {"N", "q", "lhs", "rhs", "abs_diff"}, {}, {true, Scale::loglog, "N", {"abs_diff"}}};
  double at_ref = 0.0;
  for (int n : grids) {
    QuadratureSpec quad;
    quad.n = n;
    quad.q = p.integer("q");
    const auto v = fubini_check(u1, u3, f, quad);
    const double d = std::abs(v.lhs - v.rhs);
    t.add({I64(n), I64(quad.q), v.lhs, v.rhs, d});
    if (n == ref) at_ref = d;
  }
  r.checks.push_back(check_at_most("|lhs - rhs| at N=" + std::to_string(ref), at_ref, p.num("tol")));
  r.tables = {t};
  return r;
}

// ------------------------------------------------------------------- holder

ProfileFunction random_holder_profile(std::mt19937_64& rng, double alpha) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (u(rng) < 0.5) {
    return ProfileFunction::cusp(alpha + (1.0 - alpha) * u(rng), 0.1 + 0.3 * u(rng));
  }
  const int mode = 1 + static_cast<int>(3.0 * u(rng));
  return ProfileFunction::trig(std::min(mode, 3), kTwoPi * u(rng), 0.2 + 0.8 * u(rng));
}

Result run_holder(const Params& p, std::uint64_t seed) {
  const auto n = static_cast<std::size_t>(p.integer("n"));
  require(n >= 1024 && (n & (n - 1)) == 0, "n must be a power of two >= 1024");
  const double tol = p.num("tol");
  const double radius = p.num("radius");
  Result r;
  Table ex{"exponents",
           {"alpha", "t", "u1_along_x2", "u3_along_x1", "u3_along_x2", "exponent", "expected", "error"},
           {},
           {false}};
  double worst = 0.0;
  for (double a : p.nums("alphas")) {
    const ShearFlow flow{ProfileFunction::cusp(a, radius), ProfileFunction::cusp(a, radius)};
    for (double t : p.nums("times")) {
      const auto e = flow_holder_exponents(flow, t, n);
      const double expected = t != 0.0 ? a * a : a;
      const double err = std::abs(e.exponent - expected);
      worst = std::max(worst, err);
      ex.add({a, t, e.u1_along_x2.exponent, e.u3_along_x1.exponent, e.u3_along_x2.exponent, e.exponent,
              expected, err});
      Table s{"structure-a" + tag(a) + "-t" + tag(t),
              {"h", "S_u1_along_x2", "S_u3_along_x1", "S_u3_along_x2"},
              {},
              {true, Scale::loglog, "h", {"S_u1_along_x2", "S_u3_along_x1", "S_u3_along_x2"}}};
      for (std::size_t i = 0; i < e.u1_along_x2.h.size(); ++i) {
        s.add({e.u1_along_x2.h[i], e.u1_along_x2.s[i], e.u3_along_x1.s[i], e.u3_along_x2.s[i]});
      }
      r.tables.push_back(std::move(s));
    }
  }
  r.checks.push_back(check_at_most("trace exponent error", worst, tol));

  const int pairs = p.integer("chain_pairs");
  const auto cn = static_cast<std::size_t>(p.integer("chain_n"));
  const auto tr = p.nums("chain_t_range");
  require(tr.size() == 2 && tr[0] > 0.0 && tr[1] >= tr[0], "chain_t_range must be [lo, hi] with 0 < lo <= hi");
  const auto alphas = p.nums("alphas");
  require(!alphas.empty(), "alphas must not be empty");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Table chain{"seminorm-chain", {"pair", "u1", "u3", "alpha", "t", "trace_seminorm", "bound", "ratio"}, {}, {false}};
  double worst_ratio = 0.0;
  for (int i = 0; i < pairs; ++i) {
    const double a = alphas[static_cast<std::size_t>(i) % alphas.size()];
    const auto u1 = random_holder_profile(rng, a);
    const auto u3 = random_holder_profile(rng, a);
    const double t = tr[0] + (tr[1] - tr[0]) * u(rng);
    const ShearFlow flow{u1, u3};
    const double lhs = holder_seminorm_lower(shear_trace(flow, 0.0, t, cn, 0.125), a * a);
    const double s1 = holder_seminorm_lower(Sampled1D::periodic([&](double x) { return u1(x); }, cn), a);
    const double s3 = holder_seminorm_lower(Sampled1D::periodic([&](double x) { return u3(x); }, cn), a);
    const double rhs = std::pow(t, a) * s3 * std::pow(s1, a);
    const double ratio = rhs > 0.0 ? lhs / rhs : 0.0;
    worst_ratio = std::max(worst_ratio, ratio);
    chain.add({I64(i), u1.describe(), u3.describe(), a, t, lhs, rhs, ratio});
  }
  if (pairs > 0) {
    r.checks.push_back(check_at_most("seminorm chain ratio", worst_ratio, 1.0 + p.num("chain_slack")));
  }
  r.tables.insert(r.tables.begin(), ex);
  r.tables.push_back(chain);
  return r;
}

// ------------------------------------------------------------------- energy

Result run_energy(const Params& p, std::uint64_t) {
  const ShearFlow rough{p.profile("u1"), p.profile("u3")};
  const ShearFlow control{p.profile("control_u1"), p.profile("control_u3")};
  const auto n = static_cast<std::size_t>(p.integer("n"));
  const auto cn = static_cast<std::size_t>(p.integer("control_n"));
  const bool richardson = p.flag("richardson");
  auto e_rough = [&](double t) { return richardson ? energy_richardson(rough, t, n) : energy(rough, t, n); };
  const double e0 = e_rough(0.0);
  const double c0 = energy(control, 0.0, cn);
  Result r;
  Table t{"energy", {"t", "E", "rel_dev", "E_control", "rel_dev_control"}, {}, {true, Scale::linear, "t", {"E", "E_control"}}};
  double worst = 0.0;
  double worst_c = 0.0;
  for (double time : p.nums("times")) {
    const double e = e_rough(time);
    const double c = energy(control, time, cn);
    const double d = std::abs(e - e0) / std::max(e0, 1e-300);
    const double dc = std::abs(c - c0) / std::max(c0, 1e-300);
    worst = std::max(worst, d);
    worst_c = std::max(worst_c, dc);
    t.add({time, e, d, c, dc});
  }
  r.checks.push_back(check_at_most("rough energy relative deviation", worst, p.num("tol_rough")));
  r.checks.push_back(check_at_most("control energy relative deviation", worst_c, p.num("tol_control")));
  r.tables = {t};
  return r;
}

// --------------------------------------------------------------- w1p-growth

Result run_w1p(const Params& p, std::uint64_t) {
  const auto u1 = p.profile("u1");
  const auto u3 = p.profile("u3");
  require(u1.smooth() && u3.smooth(), "w1p-growth needs differentiable profiles");
  const ShearFlow flow{u1, u3};
  const double pw = p.num("p");
  const auto n = static_cast<std::size_t>(p.integer("n"));
  const auto times = p.nums("times");
  require(times.size() >= 3, "times needs at least 3 entries");
  const auto win = p.nums("slope_window");
  require(win.size() == 2 && win[1] > win[0], "slope_window must be [lo, hi]");

  Result r;
  Table t{"w1p", {"t", "W", "W_squared"}, {}, {true, Scale::linear, "t", {"W"}}};
  Eigen::MatrixXd a(static_cast<Eigen::Index>(times.size()), 3);
  Eigen::VectorXd b(static_cast<Eigen::Index>(times.size()));
  std::vector<double> sx;
  std::vector<double> sy;
  std::vector<double> ws;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double w = sobolev_w1p(flow, times[i], pw, n);
    ws.push_back(w);
    t.add({times[i], w, w * w});
    a.row(static_cast<Eigen::Index>(i)) << 1.0, times[i], times[i] * times[i];
    b(static_cast<Eigen::Index>(i)) = w * w;
    if (times[i] >= win[0] && times[i] <= win[1]) {
      sx.push_back(times[i]);
      sy.push_back(w);
    }
  }
  // ‖u₁′u₃′‖² factorizes because the x₁ integral of u₃′(x₁ − c)² ignores c.
  const int on = 4096;
  double i1 = 0.0;
  double i3 = 0.0;
  for (int j = 0; j < on; ++j) {
    const double x = (j + kGoldenFraction) / on;
    i1 += std::pow(u1.derivative(x), 2);
    i3 += std::pow(u3.derivative(x), 2);
  }
  const double expected = (i1 / on) * (i3 / on);
  r.summary["growth_ratio"] = ws.back() / ws.front();
  if (pw == 2.0) {
    const Eigen::Vector3d coef = a.colPivHouseholderQr().solve(b);
    r.summary["quadratic_coefficient"] = coef(2);
    r.summary["expected_coefficient"] = expected;
    r.checks.push_back(check_at_most("quadratic coefficient error", std::abs(coef(2) - expected),
                                     p.num("tol_coefficient")));
    require(sx.size() >= 2, "slope_window must contain at least two times");
    const double slope = fit_line(sx, sy).slope;
    r.summary["slope"] = slope;
    r.summary["expected_slope"] = std::sqrt(expected);
    r.checks.push_back(check_at_most("large-t slope relative error",
                                     std::abs(slope / std::sqrt(expected) - 1.0), p.num("tol_slope")));
  }
  r.tables = {t};
  return r;
}

// -------------------------------------------------------------------- besov

Result run_besov(const Params& p, std::uint64_t) {
  const auto f = p.profile("profile");
  const auto n = static_cast<std::size_t>(p.integer("n"));
  const double s = p.num("s");
  const int jmax = p.integer("j_max");
  const auto samples = Sampled1D::periodic([&](double x) { return f(x); }, n);
  Result r;
  Table t{"besov", {"j", "block_sup", "weighted"}, {}, {true, Scale::semilogy, "j", {"block_sup", "weighted"}}};
  for (const auto& level : besov_levels(samples, s, jmax)) t.add({I64(level.j), level.block_sup, level.weighted});
  const double besov = besov_seminorm(samples, s, jmax);
  const double holder = holder_seminorm_lower(samples, s);
  r.summary["besov_seminorm"] = besov;
  r.summary["holder_seminorm_lower"] = holder;
  const double factor = p.num("max_factor");
  r.checks.push_back(check_between("besov over holder", holder > 0.0 ? besov / holder : 0.0, 1.0 / factor, factor));

  const auto h = Sampled1D::periodic([](double x) { return std::cos(kTwoPi * 4.0 * x); }, 256);
  const double harmonic = besov_seminorm(h, 1.0, 5);
  r.summary["harmonic_value"] = harmonic;
  r.checks.push_back(check_at_most("harmonic k=4 s=1 error", std::abs(harmonic - 8.0), 1e-12));
  r.tables = {t};
  return r;
}

// -------------------------------------------------------- spectral-selftest

SpectralField band_limited(int n, int band, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> a(static_cast<std::size_t>(band) + 1);
  std::vector<double> b(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    a[k] = g(rng);
    b[k] = g(rng);
  }
  return SpectralField::from_function(
      [&](double x) {
        double v = a[0];
        for (int k = 1; k <= band; ++k) {
          v += a[static_cast<std::size_t>(k)] * std::cos(kTwoPi * k * x) +
               b[static_cast<std::size_t>(k)] * std::sin(kTwoPi * k * x);
        }
        return v;
      },
      PeriodicGrid(n));
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Result run_spectral(const Params& p, std::uint64_t seed) {
  const int n = p.integer("n");
  const PeriodicGrid grid(n);
  Result r;
  Table eig{"eigen",
            {"k", "H_multiplier_im", "H_achieved_re", "H_achieved_im", "D_multiplier", "D_achieved_re",
             "D_achieved_im", "error"},
            {},
            {true, Scale::linear, "k", {"D_achieved_re"}}};
  auto zero = SpectralField::from_samples(std::vector<double>(static_cast<std::size_t>(n), 0.0));
  double worst_eig = 0.0;
  for (int k = -n / 2 + 1; k < n / 2; ++k) {
    if (k == 0) continue;
    auto e = zero;
    e.set_coefficient(k, 1.0);
    const Complex hm(0.0, k > 0 ? -1.0 : 1.0);
    const double dm = kTwoPi * std::abs(k);
    const Complex ha = hilbert_transform(e).coefficient(k);
    const Complex da = abs_derivative(e).coefficient(k);
    const double err = std::max(std::abs(ha - hm), std::abs(da - dm) / dm);
    worst_eig = std::max(worst_eig, err);
    eig.add({I64(k), hm.imag(), ha.real(), ha.imag(), dm, da.real(), da.imag(), err});
  }
  r.checks.push_back(check_at_most("eigenfunction relation error", worst_eig, p.num("tol_eigen")));

  std::mt19937_64 rng(seed);
  Table ids{"identities", {"field", "hilbert_squared", "abs_derivative_vs_dx_hilbert", "commutator", "skew_adjoint"}, {}, {false}};
  double worst_id = 0.0;
  for (int i = 0; i < p.integer("random_fields"); ++i) {
    const auto f = band_limited(n, n / 4, rng);
    const auto g = band_limited(n, n / 4, rng);
    const auto fv = f.samples();
    double mean = 0.0;
    for (double v : fv) mean += v;
    mean /= n;
    std::vector<double> neg(fv);
    for (auto& v : neg) v = -(v - mean);
    const double scale = max_abs(fv);
    const double e1 = max_diff(hilbert_transform(hilbert_transform(f)).samples(), neg) / scale;
    const auto d1 = abs_derivative(f).samples();
    const double e2 = max_diff(d1, derivative(hilbert_transform(f)).samples()) / max_abs(d1);
    const double e3 = max_diff(hilbert_transform(abs_derivative(f)).samples(),
                               abs_derivative(hilbert_transform(f)).samples()) / max_abs(d1);
    const auto hf = hilbert_transform(f).samples();
    const auto hg = hilbert_transform(g).samples();
    const auto gv = g.samples();
    double lhs = 0.0;
    double rhs = 0.0;
    for (std::size_t j = 0; j < fv.size(); ++j) {
      lhs += hf[j] * gv[j];
      rhs -= fv[j] * hg[j];
    }
    const double e4 = std::abs(lhs - rhs) / (n * scale * max_abs(gv));
    worst_id = std::max({worst_id, e1, e2, e3, e4});
    ids.add({I64(i), e1, e2, e3, e4});
  }
  r.checks.push_back(check_at_most("operator identity error", worst_id, p.num("tol_identity")));

  Table pv{"pv", {"quantity", "value"}, {}, {false}};
  const auto f = band_limited(n, n / 8, rng);
  const auto y = band_limited(n, n / 8, rng);
  const auto d = abs_derivative(f).samples();
  const double e0 = max_diff(pv_expansion_term(f, y, 0).samples(), d) / max_abs(d);
  pv.add({std::string("order0_vs_abs_derivative"), e0});
  r.checks.push_back(check_at_most("expansion order 0 vs |D|", e0, p.num("tol_pv0")));

  const double eps = p.num("eps");
  const auto s = SpectralField::from_function([](double x) { return std::sin(kTwoPi * x); }, grid);
  const auto full = pv_full_kernel(s, s, eps).samples();
  const auto t0 = pv_expansion_term(s, s, 0).samples();
  const auto t1 = pv_expansion_term(s, s, 1).samples();
  const auto t2 = pv_expansion_term(s, s, 2).samples();
  std::vector<double> first(full.size());
  std::vector<double> corrected(full.size());
  for (std::size_t j = 0; j < full.size(); ++j) {
    first[j] = (full[j] - t0[j]) / (eps * eps);
    corrected[j] = first[j] - eps * eps * t2[j];
  }
  const double dev = max_diff(first, t1);
  pv.add({std::string("order1_vs_full_kernel"), dev});
  pv.add({std::string("order1_vs_full_kernel_minus_order2"), max_diff(corrected, t1)});
  pv.add({std::string("order1_max_abs"), max_abs(t1)});
  pv.add({std::string("order2_max_abs_times_eps2"), eps * eps * max_abs(t2)});
  if (p.flag("check_first_order")) {
    r.checks.push_back(check_at_most("expansion order 1 vs full kernel", dev, p.num("tol_pv1")));
  }
  r.summary["order1_vs_full_kernel"] = dev;
  r.tables = {eig, ids, pv};
  return r;
}

// --------------------------------------------------------------------- kh2d

std::vector<KhConvention> conventions(const Params& p) {
  std::vector<KhConvention> out;
  for (const auto& s : p.texts("conventions")) {
    if (s == "first_order") {
      out.push_back(KhConvention::first_order);
    } else if (s == "second_order") {
      out.push_back(KhConvention::second_order);
    } else {
      throw ConfigInvalid("unknown convention '" + s + "'");
    }
  }
  require(!out.empty(), "conventions must not be empty");
  return out;
}

Vec2c eigen_propagate(const Mat2& m, const Vec2c& x, double t) {
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(m.cast<Complex>());
  Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
  for (int i = 0; i < 2; ++i) d(i, i) = std::exp(t * es.eigenvalues()(i));
  return es.eigenvectors() * d * es.eigenvectors().inverse() * x;
}

Result run_kh2d(const Params& p, std::uint64_t) {
  const double w = p.num("omega0");
  require(w > 0.0, "omega0 must be positive");
  const int kmax = p.integer("k_max");
  const auto convs = conventions(p);
  Result r;
  Table g{"growth", {"k"}, {}, {true, Scale::loglog, "k", {}}};
  for (auto c : convs) {
    g.columns.push_back(std::string("sigma_") + to_string(c));
    g.plot.y.push_back(g.columns.back());
  }
  for (int k = 1; k <= kmax; ++k) {
    std::vector<Cell> row{I64(k)};
    for (auto c : convs) row.emplace_back(growth_rate(k, w, c));
    g.add(std::move(row));
  }
  Table ex{"expm", {"convention", "k", "t", "relative_deviation"}, {}, {false}};
  Table el{"ellipticity", {"convention", "k", "ratio"}, {}, {false}};
  double worst = 0.0;
  for (auto c : convs) {
    const double slope = hadamard_slope(w, c, kmax);
    r.summary[std::string("slope_") + to_string(c)] = slope;
    r.checks.push_back(check_at_most(std::string("Hadamard slope error ") + to_string(c), std::abs(slope - 1.0),
                                     p.num("tol_slope")));
    for (int k = 1; k <= kmax; ++k) {
      const double t = p.num("growth_budget") / growth_rate(k, w, c);
      const Mode2D mode{k, w, Vec2c(Complex(0.3, 0.2), Complex(-0.8, 0.5))};
      const Vec2c got = evolve_mode2d(mode, c, t);
      const Vec2c want = eigen_propagate(mode2d_matrix(k, w, c), mode.state, t);
      const double dev = (got - want).norm() / want.norm();
      worst = std::max(worst, dev);
      ex.add({std::string(to_string(c)), I64(k), t, dev});
    }
    const auto e = ellipticity_scan_2d(w, c, kmax);
    for (std::size_t i = 0; i < e.k.size(); ++i) el.add({std::string(to_string(c)), I64(e.k[i]), e.ratio[i]});
    r.summary[std::string("min_ratio_") + to_string(c)] = e.min_ratio;
  }
  r.checks.push_back(check_at_most("matrix exponential vs eigendecomposition", worst, p.num("tol_expm")));
  r.tables = {g, ex, el};
  return r;
}

// --------------------------------------------------------------------- kh3d

Result run_kh3d(const Params& p, std::uint64_t seed) {
  const auto kr = p.nums("kmag_range");
  const auto wr = p.nums("omega_range");
  require(kr.size() == 2 && kr[0] > 0.0 && kr[1] >= kr[0], "kmag_range must be [lo, hi] with lo > 0");
  require(wr.size() == 2 && wr[1] >= wr[0], "omega_range must be [lo, hi]");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uk(kr[0], kr[1]);
  std::uniform_real_distribution<double> ut(0.0, kTwoPi);
  std::uniform_real_distribution<double> uw(wr[0], wr[1]);
  Result r;
  Table sp{"spectrum",
           {"kmag", "theta", "omega1", "omega2", "ev0_re", "ev0_im", "ev1_re", "ev1_im", "ev2_re", "ev2_im",
            "ev3_re", "ev3_im", "predicted_half_wedge", "deviation", "raw_deviation", "trace_abs"},
           {},
           {false}};
  double worst = 0.0;
  double worst_trace = 0.0;
  for (int i = 0; i < p.integer("samples"); ++i) {
    const double k = uk(rng);
    const double th = ut(rng);
    const double w1 = uw(rng);
    const double w2 = uw(rng);
    const auto rep = spectrum_3d(assemble_3d_matrix(k, th, Vec3(w1, w2, 0.0)));
    std::vector<Cell> row{k, th, w1, w2};
    for (const auto& e : rep.eigenvalues) {
      row.emplace_back(e.real());
      row.emplace_back(e.imag());
    }
    row.emplace_back(0.5 * wedge_magnitude(k, th, Vec3(w1, w2, 0.0)));
    row.emplace_back(rep.max_deviation);
    row.emplace_back(rep.raw_deviation);
    row.emplace_back(std::abs(rep.trace));
    sp.add(std::move(row));
    worst = std::max(worst, rep.max_deviation);
    worst_trace = std::max(worst_trace, std::abs(rep.trace));
  }
  r.checks.push_back(check_at_most("spectrum deviation", worst, p.num("tol_deviation")));
  r.checks.push_back(check_at_most("trace", worst_trace, p.num("tol_trace")));

  Table par{"parallel", {"theta", "max_abs_eigenvalue"}, {}, {false}};
  double worst_par = 0.0;
  const int np = p.integer("parallel_samples");
  for (int i = 0; i < np; ++i) {
    const double th = kTwoPi * i / np;
    const Vec3 w = 1.3 * Vec3(std::cos(th), std::sin(th), 0.0);
    const auto rep = spectrum_3d(assemble_3d_matrix(2.0, th, w));
    double m = 0.0;
    for (const auto& e : rep.eigenvalues) m = std::max(m, std::abs(e));
    worst_par = std::max(worst_par, m);
    par.add({th, m});
  }
  r.checks.push_back(check_at_most("parallel direction spectrum", worst_par, p.num("tol_deviation")));

  const auto ew = p.nums("ellipticity_omega");
  require(ew.size() == 2, "ellipticity_omega must have two entries");
  const auto e = ellipticity_scan_3d(Vec3(ew[0], ew[1], 0.0), p.integer("directions"));
  Table el{"ellipticity", {"theta", "ratio"}, {}, {true, Scale::linear, "theta", {"ratio"}}};
  for (std::size_t i = 0; i < e.theta.size(); ++i) el.add({e.theta[i], e.ratio[i]});
  r.summary["ellipticity_min_ratio"] = e.min_ratio;
  r.summary["ellipticity_argmin_theta"] = e.argmin_theta;
  r.tables = {sp, par, el};
  return r;
}

// -------------------------------------------------------------------- sheet

Result run_sheet(const Params& p, std::uint64_t) {
  const int m = p.integer("nodes");
  const double w0 = p.num("density");
  const auto flat = SheetCurve2D::flat([w0](double) { return w0; }, m);
  Result r;
  Table fl{"flat", {"x1", "x2", "u1", "u2", "expected_u1"}, {}, {true, Scale::linear, "x2", {"u1", "expected_u1"}}};
  double worst_flat = 0.0;
  for (double h : p.nums("heights")) {
    for (double x2 : {-h, h}) {
      const Vec2 u = biot_savart_2d(flat, Vec2(0.3, x2));
      const double want = x2 > 0.0 ? -0.5 * w0 : 0.5 * w0;
      worst_flat = std::max({worst_flat, std::abs(u(0) - want), std::abs(u(1))});
      fl.add({0.3, x2, u(0), u(1), want});
    }
  }
  std::sort(fl.rows.begin(), fl.rows.end(),
            [](const auto& a, const auto& b) { return std::get<double>(a[1]) < std::get<double>(b[1]); });
  r.checks.push_back(check_at_most("flat sheet velocity error", worst_flat, p.num("tol_flat")));

  double worst_avg = 0.0;
  for (int j = 0; j < 8; ++j) worst_avg = std::max(worst_avg, average_velocity_on_sheet(flat, j / 8.0).norm());
  r.checks.push_back(check_at_most("flat sheet average velocity", worst_avg, p.num("tol_average")));

  const double eps = p.num("near_flat_eps");
  auto graph = [](double amp, int nodes, double w, double mod) {
    return SheetCurve2D::graph([amp](double l) { return amp * std::sin(kTwoPi * l); },
                               [amp](double l) { return amp * kTwoPi * std::cos(kTwoPi * l); },
                               [w, mod](double l) { return w * (1.0 + mod * std::cos(kTwoPi * l)); }, nodes);
  };
  const auto near = graph(eps, m, 1.0, 0.0);
  const auto y = SpectralField::from_function([](double l) { return std::sin(kTwoPi * l); }, PeriodicGrid(m));
  const auto dy = abs_derivative(y).samples();
  Table av{"average", {"lambda", "v1", "v2", "linearized_v1"}, {}, {true, Scale::linear, "lambda", {"v1", "linearized_v1"}}};
  double worst_lin = 0.0;
  for (int j = 0; j < m; j += m / 32) {
    const Vec2 v = average_velocity_on_sheet(near, near.node(j));
    const double lin = -0.5 * eps * dy[static_cast<std::size_t>(j)];
    worst_lin = std::max({worst_lin, std::abs(v(0) - lin), std::abs(v(1))});
    av.add({near.node(j), v(0), v(1), lin});
  }
  r.checks.push_back(check_at_most("near-flat linearization error", worst_lin, p.num("tol_linearization")));

  const auto wavy = graph(p.num("jump_amplitude"), p.integer("jump_nodes"), 1.0, 0.3);
  r.summary["chord_arc_constant"] = chord_arc_constant(wavy);
  const auto deltas = p.nums("deltas");
  Table jp{"jump",
           {"delta", "normal_jump", "tangential_jump", "density_residual"},
           {},
           {true, Scale::loglog, "delta", {"normal_jump", "density_residual"}}};
  std::vector<JumpReport> reps;
  for (double d : deltas) {
    reps.push_back(jump_check(wavy, p.num("jump_lambda"), d));
    jp.add({d, reps.back().normal_jump, reps.back().tangential_jump, reps.back().density_residual});
  }
  const auto band = p.nums("order_band");
  require(band.size() == 2, "order_band must be [lo, hi]");
  double lo = 1e300;
  double hi = -1e300;
  for (std::size_t i = 0; i + 1 < reps.size(); ++i) {
    const double q = deltas[i] / deltas[i + 1];
    for (double ratio : {reps[i].normal_jump / reps[i + 1].normal_jump,
                         reps[i].density_residual / reps[i + 1].density_residual}) {
      // Observed order of convergence in δ.
      const double order = std::log(ratio) / std::log(q);
      lo = std::min(lo, order);
      hi = std::max(hi, order);
    }
  }
  if (reps.size() >= 2) {
    r.checks.push_back(check_between("jump residual order in delta (min)", lo, band[0], band[1]));
    r.checks.push_back(check_between("jump residual order in delta (max)", hi, band[0], band[1]));
  }
  const auto flat_jump = jump_check(flat, 0.3, deltas.front());
  r.summary["flat_tangential_jump"] = flat_jump.tangential_jump;
  r.checks.push_back(check_at_most("flat sheet density residual", flat_jump.density_residual, 1e-6));
  r.tables = {fl, av, jp};
  return r;
}

// ----------------------------------------------------------------- example1

Result run_example1(const Params& p, std::uint64_t) {
  Example1Params e;
  e.alpha1 = p.num("alpha1");
  e.beta1 = p.num("beta1");
  e.alpha3 = p.num("alpha3");
  e.beta3 = p.num("beta3");
  e.xi1 = p.num("xi1");
  e.xi2 = p.num("xi2");
  const auto flow = example1_flow(e);
  Result r;
  Table pieces{"pieces", {"t", "label", "axis", "offset", "x2_lo", "x2_hi"}, {}, {false}};
  Table mem{"membership", {"t", "x1", "x2", "x3", "inside", "expected"}, {}, {false}};
  Table div{"divergence", {"t", "N", "residual"}, {}, {false}};
  int mismatches = 0;
  double worst_div = 0.0;
  for (double t : p.nums("times")) {
    const auto s = example1_surface(e, t);
    for (const auto& pc : s.pieces()) {
      pieces.add({t, pc.label, I64(pc.axis + 1), pc.offset, pc.x2_lo, pc.x2_hi});
    }
    const double lower = wrap_unit(e.xi1 + t * e.alpha1);
    const double upper = wrap_unit(e.xi1 + t * e.beta1);
    const double below = 0.5 * e.xi2;
    const double above = 0.5 * (1.0 + e.xi2);
    struct Probe {
      double x1, x2;
      bool expected;
    };
    const std::vector<Probe> probes = {
        {lower, below, true},
        {upper, above, true},
        {0.123, e.xi2, true},
        {lower, above, lower == upper},
        {upper, below, lower == upper},
    };
    for (const auto& pr : probes) {
      for (double z : {0.0, 0.4}) {
        const bool in = s.contains(Point3(pr.x1, pr.x2, z));
        if (in != pr.expected) ++mismatches;
        mem.add({t, pr.x1, pr.x2, z, I64(in), I64(pr.expected)});
      }
    }
    const double d = divergence_residual(flow, t, p.integer("divergence_n"));
    worst_div = std::max(worst_div, d);
    div.add({t, I64(p.integer("divergence_n")), d});
  }
  r.checks.push_back(check_at_most("membership mismatches", mismatches, 0.0));
  r.checks.push_back(check_at_most("divergence residual", worst_div, p.num("tol_divergence")));
  r.tables = {pieces, mem, div};
  return r;
}

// ----------------------------------------------------------------- example2

Result run_example2(const Params& p, std::uint64_t) {
  const auto u1 = p.profile("u1");
  const int count = p.integer("x2_samples");
  require(count >= 1, "x2_samples must be positive");
  Result r;
  Table t{"example2", {"t", "x2", "d1", "d2", "d3", "bulk", "tangency_residual", "norm_error"}, {}, {false}};
  double worst_tan = 0.0;
  double worst_norm = 0.0;
  for (double time : p.nums("times")) {
    for (int j = 0; j < count; ++j) {
      const double x2 = (j + kGoldenFraction) / count;
      const auto v = example2_vorticity(u1, time, x2);
      const double ne = std::abs(v.sheet_density.head<2>().norm() - 1.0);
      worst_tan = std::max(worst_tan, v.tangency_residual);
      worst_norm = std::max(worst_norm, ne);
      t.add({time, x2, v.sheet_density(0), v.sheet_density(1), v.sheet_density(2), v.bulk_component,
             v.tangency_residual, ne});
    }
  }
  r.checks.push_back(check_at_most("tangency residual", worst_tan, p.num("tol_tangency")));
  r.checks.push_back(check_at_most("normalization error", worst_norm, p.num("tol_norm")));
  const Vec3 fs = flat_sheet_velocity_3d(Vec3(1.0, 0.0, 0.0), Point3(0.0, 0.0, 0.5));
  r.summary["flat_sheet_3d_velocity_above"] = {fs(0), fs(1), fs(2)};
  r.tables = {t};
  return r;
}

Json step_profile(double below, double above, double jump) {
  return profile_json("step", {{"below", below}, {"above", above}, {"jump", jump}});
}

std::vector<Experiment> build_catalog() {
  std::vector<Experiment> c;
  c.push_back({"weak-check", "weak Euler residual of a shear flow against a seeded divergence-free basis",
               "weak formulation; shear flows are weak solutions",
               Json{{"u1", step_profile(1.0, 0.0, 0.5)},
                    {"u3", step_profile(1.0, 0.0, 0.5)},
                    {"grids", {64, 128, 256, 512}},
                    {"q", 16},
                    {"basis_count", 20},
                    {"max_mode", 2},
                    {"reference_n", 256},
                    {"tol_residual", 1e-3},
                    {"max_ratio", 0.6},
                    {"divergence_times", {0.0, 0.5, 1.0}},
                    {"divergence_n", 256},
                    {"tol_divergence", 1e-3}},
               run_weak_check});
  c.push_back({"fubini", "change of variables identity for the transported third component",
               "change of variables for shear transport",
               Json{{"u1", step_profile(1.0, 0.0, 0.5)},
                    {"u3", profile_json("sin_inverse", {{"radius", 0.25}})},
                    {"phi_modes", {1, 1, 0}},
                    {"phi_phases", {0.3, 0.1, 0.2}},
                    {"window", {0.5, 0.5}},
                    {"grids", {128, 256, 512}},
                    {"q", 16},
                    {"reference_n", 512},
                    {"tol", 1e-4}},
               run_fubini});
  c.push_back({"holder", "Hölder exponent of cusp-flow traces drops from alpha to alpha squared for t != 0",
               "Hölder loss and the seminorm chain bound",
               Json{{"alphas", {0.5, 0.7}},
                    {"times", {0.0, 0.5, 1.0, 2.0}},
                    {"n", 16384},
                    {"radius", 0.25},
                    {"tol", 0.02},
                    {"chain_pairs", 20},
                    {"chain_n", 4096},
                    {"chain_t_range", {0.25, 2.0}},
                    {"chain_slack", 0.1}},
               run_holder});
  c.push_back({"energy", "energy of rough and smooth shear flows is constant in time",
               "energy conservation of shear-flow weak solutions",
               Json{{"u1", profile_json("sin_inverse", {{"radius", 0.25}})},
                    {"u3", step_profile(1.0, 0.0, 0.3)},
                    {"times", {0.0, 0.3, 1.0, 3.0}},
                    {"n", 1024},
                    {"richardson", true},
                    {"tol_rough", 1e-3},
                    {"control_u1", profile_json("trig", {{"mode", 1}})},
                    {"control_u3", profile_json("trig", {{"mode", 1}, {"phase", kPi / 2}})},
                    {"control_n", 64},
                    {"tol_control", 1e-10}},
               run_energy});
  c.push_back({"w1p-growth", "W^{1,2} norm of a smooth shear flow grows linearly in t",
               "W^{1,p} norm inflation",
               Json{{"u1", profile_json("trig", {{"mode", 1}})},
                    {"u3", profile_json("trig", {{"mode", 1}})},
                    {"p", 2.0},
                    {"n", 32},
                    {"times", {0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0, 45.0, 50.0}},
                    {"slope_window", {5.0, 50.0}},
                    {"tol_coefficient", 1e-6},
                    {"tol_slope", 0.02}},
               run_w1p});
  c.push_back({"besov", "dyadic Besov seminorm of a cusp profile against its Hölder seminorm",
               "Besov and Triebel-Lizorkin comparison",
               Json{{"profile", profile_json("cusp", {{"alpha", 0.5}, {"radius", 0.25}})},
                    {"s", 0.5},
                    {"j_max", 10},
                    {"n", 4096},
                    {"max_factor", 10.0}},
               run_besov});
  c.push_back({"spectral-selftest", "Hilbert transform and |D| multipliers, |D| = dx H, principal-value expansion",
               "Hilbert transform and |D| definitions; expansion of the sheet kernel",
               Json{{"n", 64},
                    {"random_fields", 3},
                    {"tol_eigen", 1e-12},
                    {"tol_identity", 1e-12},
                    {"tol_pv0", 1e-8},
                    {"eps", 1e-2},
                    {"tol_pv1", 1e-4},
                    {"check_first_order", false}},
               run_spectral});
  c.push_back({"kh2d", "2d Kelvin-Helmholtz growth rate is linear in |k| under both conventions",
               "linearized 2d sheet system and its second-order form",
               Json{{"omega0", 1.0},
                    {"k_max", 16},
                    {"conventions", {"first_order", "second_order"}},
                    {"growth_budget", 8.0},
                    {"tol_slope", 0.01},
                    {"tol_expm", 1e-9}},
               run_kh2d});
  c.push_back({"kh3d", "spectrum of the 3d linearized sheet matrix is {0, 0, +-|k^w|/2}",
               "3d sheet matrix and its eigenvalues; loss of ellipticity",
               Json{{"samples", 100},
                    {"kmag_range", {0.1, 10.0}},
                    {"omega_range", {-2.0, 2.0}},
                    {"parallel_samples", 8},
                    {"ellipticity_omega", {1.0, 0.0}},
                    {"directions", 64},
                    {"tol_deviation", 1e-10},
                    {"tol_trace", 1e-12}},
               run_kh3d});
  c.push_back({"sheet", "Biot-Savart velocity of 2d vortex sheets, averaged velocity and jump relations",
               "Biot-Savart law for sheets; stationary flat sheet",
               Json{{"nodes", 256},
                    {"density", 1.0},
                    {"heights", {0.05, 0.1, 0.25, 0.5, 1.0}},
                    {"near_flat_eps", 1e-3},
                    {"tol_flat", 1e-8},
                    {"tol_average", 1e-8},
                    {"tol_linearization", 1e-4},
                    {"jump_amplitude", 0.05},
                    {"jump_nodes", 512},
                    {"jump_lambda", 0.1},
                    {"deltas", {0.05, 0.025, 0.0125}},
                    {"order_band", {0.8, 1.2}}},
               run_sheet});
  c.push_back({"example1", "singular surface of the two-step shear flow",
               "first example: vorticity on a piecewise planar surface",
               Json{{"alpha1", 1.0},
                    {"beta1", 0.0},
                    {"alpha3", 1.0},
                    {"beta3", 0.0},
                    {"xi1", 0.5},
                    {"xi2", 0.5},
                    {"times", {0.0, 0.25, 0.5}},
                    {"divergence_n", 256},
                    {"tol_divergence", 1e-3}},
               run_example1});
  c.push_back({"example2", "sheet density of the sheared step is tangent to the surface and unit length",
               "second example: vorticity on a curved sheet",
               Json{{"u1", profile_json("trig", {{"mode", 1}})},
                    {"times", {0.0, 0.5, 1.0, 2.0}},
                    {"x2_samples", 32},
                    {"tol_tangency", 1e-12},
                    {"tol_norm", 1e-14}},
               run_example2});
  return c;
}

}  // namespace

const std::vector<Experiment>& experiments() {
  static const std::vector<Experiment> catalog = build_catalog();
  return catalog;
}

}  // namespace shearlab::cli
