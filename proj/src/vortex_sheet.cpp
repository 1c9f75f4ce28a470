#include "shearlab/vortex_sheet.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "shearlab/errors.hpp"
#include "shearlab/quadrature.hpp"
#include "shearlab/spectral.hpp"

namespace shearlab {

namespace {

Vec2 rotate_quarter(const Vec2& v) { return {-v(1), v(0)}; }

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

// Trigonometric interpolant of samples on j/M, evaluated anywhere on ℝ.
class TrigInterpolant {
 public:
  explicit TrigInterpolant(const std::vector<double>& samples)
      : field_(SpectralField::from_samples(samples)) {}

  double value(double x) const { return evaluate(x, false); }
  double slope(double x) const { return evaluate(x, true); }

 private:
  double evaluate(double x, bool derivative) const {
    const int m = field_.size();
    double acc = 0.0;
    for (int k = -m / 2; k < m / 2; ++k) {
      const Complex c = field_.coefficient(k);
      if (k == -m / 2) {
        // Unpaired mode: keep its real cosine part.
        const double arg = kTwoPi * k * x;
        acc += derivative ? -c.real() * kTwoPi * k * std::sin(arg) : c.real() * std::cos(arg);
        continue;
      }
      const double arg = kTwoPi * k * x;
      const Complex e(std::cos(arg), std::sin(arg));
      const Complex term = derivative ? c * e * Complex(0.0, kTwoPi * k) : c * e;
      acc += term.real();
    }
    return acc;
  }

  SpectralField field_;
};

double node_spacing_floor(const SheetCurve2D& sheet) {
  double fastest = 0.0;
  for (int j = 0; j < sheet.nodes(); ++j) fastest = std::max(fastest, sheet.speed(sheet.node(j)));
  return 3.0 * fastest / sheet.nodes();
}

Vec2 periodic_difference(const Vec2& d) { return {wrap_centered(d(0)), d(1)}; }

}  // namespace

SheetCurve2D::SheetCurve2D(CurveFn position, CurveFn tangent, ScalarFn density, int nodes)
    : position_(std::move(position)),
      tangent_(std::move(tangent)),
      density_(std::move(density)),
      nodes_(nodes) {
  if (nodes_ < 8) throw InvalidParameters("sheet needs at least 8 quadrature nodes");
  for (int j = 0; j < nodes_; ++j) {
    if (!(tangent_(node(j)).norm() > 0.0)) {
      throw InvalidParameters("sheet parameterization is not immersed");
    }
  }
}

SheetCurve2D SheetCurve2D::flat(ScalarFn density, int nodes, double height) {
  return SheetCurve2D([height](double l) { return Vec2(l, height); },
                      [](double) { return Vec2(1.0, 0.0); }, std::move(density), nodes);
}

SheetCurve2D SheetCurve2D::graph(ScalarFn y, ScalarFn dy, ScalarFn density, int nodes) {
  return SheetCurve2D([y](double l) { return Vec2(l, y(l)); },
                      [dy](double l) { return Vec2(1.0, dy(l)); }, std::move(density), nodes);
}

SheetCurve2D SheetCurve2D::sampled(const std::vector<double>& r1_minus_lambda,
                                   const std::vector<double>& r2,
                                   const std::vector<double>& density) {
  if (r1_minus_lambda.size() != r2.size() || r2.size() != density.size()) {
    throw InvalidParameters("sheet samples must have equal length");
  }
  auto p1 = std::make_shared<TrigInterpolant>(r1_minus_lambda);
  auto p2 = std::make_shared<TrigInterpolant>(r2);
  auto w = std::make_shared<TrigInterpolant>(density);
  return SheetCurve2D([p1, p2](double l) { return Vec2(l + p1->value(l), p2->value(l)); },
                      [p1, p2](double l) { return Vec2(1.0 + p1->slope(l), p2->slope(l)); },
                      [w](double l) { return w->value(l); }, static_cast<int>(r2.size()));
}

double chord_arc_constant(const SheetCurve2D& sheet) {
  const int m = sheet.nodes();
  double worst = 0.0;
  for (int i = 0; i < m; ++i) {
    const double li = sheet.node(i);
    const Vec2 ri = sheet.position(li);
    for (int j = 1; j <= m / 2; ++j) {
      const double dl = static_cast<double>(j) / m;
      const double chord = (sheet.position(li + dl) - ri).norm();
      if (!(chord > 0.0)) throw DegenerateData("sheet self-intersects at sampled nodes");
      worst = std::max(worst, dl / chord);
    }
  }
  return worst;
}

Vec2 periodic_kernel(const Vec2& d) {
  const double e = std::exp(-kTwoPi * std::abs(d(1)));
  const double c = std::cos(kTwoPi * d(0));
  const double denom = 1.0 + e * e - 2.0 * e * c;
  return {kPi * std::sin(kTwoPi * d(0)) * 2.0 * e / denom,
          kPi * sgn(d(1)) * (1.0 - e * e) / denom};
}

Vec2 biot_savart_2d(const SheetCurve2D& sheet, const Vec2& x) {
  const int m = sheet.nodes();
  const double floor = node_spacing_floor(sheet);
  std::vector<double> s1(static_cast<std::size_t>(m));
  std::vector<double> s2(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    const double l = sheet.node(j);
    const Vec2 d = periodic_difference(x - sheet.position(l));
    if (d.norm() < floor * (1.0 - 1e-9)) {
      throw TooCloseToSheet("evaluation point is within 3 node spacings of the sheet");
    }
    const Vec2 k = periodic_kernel(d) * (sheet.density(l) * sheet.speed(l));
    s1[static_cast<std::size_t>(j)] = k(0);
    s2[static_cast<std::size_t>(j)] = k(1);
  }
  const Vec2 sum(compensated_sum(s1), compensated_sum(s2));
  return rotate_quarter(sum) / (kTwoPi * m);
}

Vec2 average_velocity_on_sheet(const SheetCurve2D& sheet, double lambda) {
  const int m = sheet.nodes();
  if (m % 2 != 0) throw InvalidParameters("alternate-point rule needs an even node count");
  const Vec2 r = sheet.position(lambda);
  std::vector<double> s1;
  std::vector<double> s2;
  for (int j = 1; j < m; j += 2) {
    const double l = lambda + static_cast<double>(j) / m;
    const Vec2 k = periodic_kernel(periodic_difference(r - sheet.position(l))) *
                   (sheet.density(l) * sheet.speed(l));
    s1.push_back(k(0));
    s2.push_back(k(1));
  }
  const Vec2 sum(compensated_sum(s1), compensated_sum(s2));
  return rotate_quarter(sum) * (2.0 / m) / kTwoPi;
}

JumpReport jump_check(const SheetCurve2D& sheet, double lambda, double delta) {
  const Vec2 r = sheet.position(lambda);
  const Vec2 tangent = sheet.tangent(lambda);
  const double speed = tangent.norm();
  const Vec2 n = rotate_quarter(tangent / speed);
  const Vec2 plus = biot_savart_2d(sheet, r + delta * n);
  const Vec2 minus = biot_savart_2d(sheet, r - delta * n);
  const Vec2 jump = plus - minus;
  JumpReport rep;
  rep.normal_jump = std::abs(jump.dot(n));
  rep.tangential_jump = n(0) * jump(1) - n(1) * jump(0);
  rep.density_residual = std::abs(rep.tangential_jump * speed - sheet.density(lambda) * speed);
  rep.probe_average = 0.5 * (plus + minus);
  return rep;
}

ShearFlow example1_flow(const Example1Params& p) {
  return {ProfileFunction::step(p.alpha1, p.beta1, p.xi2),
          ProfileFunction::step(p.alpha3, p.beta3, p.xi1)};
}

bool Example1Surface::contains(const Point3& x, double tol) const {
  for (const auto& piece : pieces_) {
    if (std::abs(wrap_centered(x(piece.axis) - piece.offset)) > tol) continue;
    if (piece.axis == 1) return true;
    const double x2 = wrap_unit(x(1));
    if (x2 >= piece.x2_lo - tol && x2 <= piece.x2_hi + tol) return true;
  }
  return false;
}

std::string Example1Surface::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "t=" << t_;
  for (const auto& p : pieces_) {
    os << "; " << p.label << ": x" << (p.axis + 1) << "=" << p.offset;
    if (p.axis == 0) os << ", x2 in [" << p.x2_lo << ", " << p.x2_hi << "]";
  }
  return os.str();
}

Example1Surface example1_surface(const Example1Params& p, double t) {
  if (p.alpha1 < p.beta1) throw InvalidParameters("example 1 needs alpha1 >= beta1");
  if (p.alpha3 == p.beta3) throw InvalidParameters("example 1 needs alpha3 != beta3");
  std::vector<PlanarPiece> pieces;
  pieces.push_back({"horizontal", 1, wrap_unit(p.xi2), 0.0, 1.0});
  pieces.push_back({"lower", 0, wrap_unit(p.xi1 + t * p.alpha1), 0.0, p.xi2});
  pieces.push_back({"upper", 0, wrap_unit(p.xi1 + t * p.beta1), p.xi2, 1.0});
  return Example1Surface(std::move(pieces), t);
}

Example2Vorticity example2_vorticity(const ProfileFunction& u1, double t, double x2) {
  const double slope = t * u1.derivative(x2);
  const double norm = std::sqrt(1.0 + slope * slope);
  Example2Vorticity out;
  out.sheet_density = Vec3(slope, 1.0, 0.0) / norm;
  out.bulk_component = -u1.derivative(x2);
  const Vec3 normal = Vec3(1.0, -slope, 0.0) / norm;
  out.tangency_residual = std::abs(out.sheet_density.dot(normal));
  return out;
}

Vec3 flat_sheet_velocity_3d(const Vec3& density, const Point3& x) {
  if (density(2) != 0.0) throw InvalidBackground("sheet density must lie in the sheet plane");
  return 0.5 * sgn(x(2)) * density.cross(Vec3::UnitZ());
}

}  // namespace shearlab
