#include "shearlab/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "shearlab/errors.hpp"
#include "shearlab/types.hpp"

namespace shearlab {

namespace {

double bump_tail(double tau) { return tau > 0.0 ? std::exp(-1.0 / tau) : 0.0; }

double bump_tail_derivative(double tau) {
  return tau > 0.0 ? std::exp(-1.0 / tau) / (tau * tau) : 0.0;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Blend weight on r ≤ |ξ| ≤ 1/2 and its derivative with respect to |ξ|.
struct Blend {
  double weight;
  double slope;
};

Blend blend_at(double a, double radius) {
  const double width = 0.5 - radius;
  const double tau = (a - radius) / width;
  return {smooth_transition(tau), smooth_transition_derivative(tau) / width};
}

double sampled_value(const ProfileFunction::Sampled& s, double x) {
  const auto n = static_cast<long>(s.values.size());
  const double pos = wrap_unit(x) * static_cast<double>(n);
  long i = static_cast<long>(std::floor(pos));
  const double frac = pos - static_cast<double>(i);
  auto at = [&](long j) { return s.values[static_cast<std::size_t>(((j % n) + n) % n)]; };
  switch (s.order) {
    case 0:
      return at(i);
    case 1:
      return (1.0 - frac) * at(i) + frac * at(i + 1);
    default: {
      // Cubic Lagrange through nodes i-1 .. i+2, local coordinate u = frac.
      const double u = frac;
      const double lm = -u * (u - 1.0) * (u - 2.0) / 6.0;
      const double l0 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
      const double l1 = -(u + 1.0) * u * (u - 2.0) / 2.0;
      const double l2 = (u + 1.0) * u * (u - 1.0) / 6.0;
      return lm * at(i - 1) + l0 * at(i) + l1 * at(i + 1) + l2 * at(i + 2);
    }
  }
}

double sampled_derivative(const ProfileFunction::Sampled& s, double x) {
  const auto n = static_cast<long>(s.values.size());
  const double pos = wrap_unit(x) * static_cast<double>(n);
  long i = static_cast<long>(std::floor(pos));
  const double frac = pos - static_cast<double>(i);
  auto at = [&](long j) { return s.values[static_cast<std::size_t>(((j % n) + n) % n)]; };
  const double scale = static_cast<double>(n);
  if (s.order == 0) {
    throw NonDifferentiableProfile("sampled profile of order 0 has no derivative");
  }
  if (s.order == 1) {
    if (frac == 0.0 && at(i) - at(i - 1) != at(i + 1) - at(i)) {
      throw NonDifferentiableProfile("linear interpolant has a kink at a node");
    }
    return (at(i + 1) - at(i)) * scale;
  }
  const double u = frac;
  const double dlm = -(3.0 * u * u - 6.0 * u + 2.0) / 6.0;
  const double dl0 = (3.0 * u * u - 4.0 * u - 1.0) / 2.0;
  const double dl1 = -(3.0 * u * u - 2.0 * u - 2.0) / 2.0;
  const double dl2 = (3.0 * u * u - 1.0) / 6.0;
  return scale * (dlm * at(i - 1) + dl0 * at(i) + dl1 * at(i + 1) + dl2 * at(i + 2));
}

std::size_t piece_index(const ProfileFunction::PiecewiseConstant& p, double x) {
  const double y = wrap_unit(x);
  const auto it = std::upper_bound(p.breakpoints.begin(), p.breakpoints.end(), y);
  if (it == p.breakpoints.begin()) return p.levels.size() - 1;
  return static_cast<std::size_t>(it - p.breakpoints.begin()) - 1;
}

}  // namespace

double smooth_transition(double tau) {
  if (tau <= 0.0) return 0.0;
  if (tau >= 1.0) return 1.0;
  const double a = bump_tail(tau);
  const double b = bump_tail(1.0 - tau);
  return a / (a + b);
}

double smooth_transition_derivative(double tau) {
  if (tau <= 0.0 || tau >= 1.0) return 0.0;
  const double a = bump_tail(tau);
  const double b = bump_tail(1.0 - tau);
  const double da = bump_tail_derivative(tau);
  const double db = -bump_tail_derivative(1.0 - tau);
  const double sum = a + b;
  return (da * b - a * db) / (sum * sum);
}

ProfileFunction ProfileFunction::constant(double value) {
  return ProfileFunction(Constant{value});
}

ProfileFunction ProfileFunction::trig(int mode, double phase, double amplitude, double offset) {
  return ProfileFunction(Trig{mode, phase, amplitude, offset});
}

ProfileFunction ProfileFunction::cusp(double alpha, double radius) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw InvalidParameters("cusp exponent must lie in (0, 1]");
  }
  if (!(radius > 0.0 && radius < 0.5)) {
    throw InvalidParameters("cusp radius must lie in (0, 1/2)");
  }
  return ProfileFunction(Cusp{alpha, radius});
}

ProfileFunction ProfileFunction::step(double below, double above, double jump) {
  if (!(jump > 0.0 && jump < 1.0)) {
    throw InvalidParameters("step jump location must lie in (0, 1)");
  }
  return ProfileFunction(Step{below, above, jump});
}

ProfileFunction ProfileFunction::sin_inverse(double radius) {
  if (!(radius > 0.0 && radius < 0.5)) {
    throw InvalidParameters("sin_inverse radius must lie in (0, 1/2)");
  }
  return ProfileFunction(SinInverse{radius});
}

ProfileFunction ProfileFunction::piecewise_constant(std::vector<double> breakpoints,
                                                    std::vector<double> levels) {
  if (breakpoints.empty() || breakpoints.size() != levels.size()) {
    throw InvalidParameters("piecewise_constant needs one level per breakpoint");
  }
  if (!std::is_sorted(breakpoints.begin(), breakpoints.end()) ||
      std::adjacent_find(breakpoints.begin(), breakpoints.end()) != breakpoints.end() ||
      breakpoints.front() < 0.0 || breakpoints.back() >= 1.0) {
    throw InvalidParameters("breakpoints must be strictly increasing in [0, 1)");
  }
  return ProfileFunction(PiecewiseConstant{std::move(breakpoints), std::move(levels)});
}

ProfileFunction ProfileFunction::sampled(std::vector<double> values, int order) {
  if (order != 0 && order != 1 && order != 3) {
    throw InvalidParameters("sampled interpolation order must be 0, 1 or 3");
  }
  if (values.size() < 4) {
    throw InvalidParameters("sampled profile needs at least 4 values");
  }
  return ProfileFunction(Sampled{std::move(values), order});
}

double ProfileFunction::operator()(double x) const {
  return std::visit(
      Overloaded{
          [](const Constant& c) { return c.value; },
          [x](const Trig& t) {
            return t.offset + t.amplitude * std::sin(kTwoPi * t.mode * wrap_unit(x) + t.phase);
          },
          [x](const Cusp& c) {
            const double a = std::abs(wrap_centered(x));
            const double core = std::pow(a, c.alpha);
            if (a <= c.radius) return core;
            const Blend b = blend_at(a, c.radius);
            return (1.0 - b.weight) * core + b.weight * std::pow(c.radius, c.alpha);
          },
          [x](const Step& s) { return wrap_unit(x) < s.jump ? s.below : s.above; },
          [x](const SinInverse& s) {
            const double xi = wrap_centered(x);
            if (xi == 0.0) return 0.0;
            const double core = std::sin(1.0 / xi);
            const double a = std::abs(xi);
            if (a <= s.radius) return core;
            return (1.0 - blend_at(a, s.radius).weight) * core;
          },
          [x](const PiecewiseConstant& p) { return p.levels[piece_index(p, x)]; },
          [x](const Sampled& s) { return sampled_value(s, x); },
      },
      params_);
}

double ProfileFunction::derivative(double x) const {
  return std::visit(
      Overloaded{
          [](const Constant&) { return 0.0; },
          [x](const Trig& t) {
            return t.amplitude * kTwoPi * t.mode * std::cos(kTwoPi * t.mode * wrap_unit(x) + t.phase);
          },
          [x](const Cusp& c) {
            const double xi = wrap_centered(x);
            const double a = std::abs(xi);
            if (a == 0.0) throw NonDifferentiableProfile("cusp profile at 0");
            const double sgn = xi > 0.0 ? 1.0 : -1.0;
            const double core = std::pow(a, c.alpha);
            const double dcore = c.alpha * std::pow(a, c.alpha - 1.0);
            if (a <= c.radius) return sgn * dcore;
            const Blend b = blend_at(a, c.radius);
            const double plateau = std::pow(c.radius, c.alpha);
            return sgn * ((1.0 - b.weight) * dcore + b.slope * (plateau - core));
          },
          [x](const Step& s) {
            const double y = wrap_unit(x);
            if (s.below != s.above && (y == s.jump || y == 0.0)) {
              throw NonDifferentiableProfile("step profile at its jump");
            }
            return 0.0;
          },
          [x](const SinInverse& s) {
            const double xi = wrap_centered(x);
            if (xi == 0.0) throw NonDifferentiableProfile("sin_inverse profile at 0");
            const double a = std::abs(xi);
            const double dcore = -std::cos(1.0 / xi) / (xi * xi);
            if (a <= s.radius) return dcore;
            const Blend b = blend_at(a, s.radius);
            const double sgn = xi > 0.0 ? 1.0 : -1.0;
            return (1.0 - b.weight) * dcore - sgn * b.slope * std::sin(1.0 / xi);
          },
          [x](const PiecewiseConstant& p) {
            const double y = wrap_unit(x);
            for (std::size_t i = 0; i < p.breakpoints.size(); ++i) {
              const double left = p.levels[(i + p.levels.size() - 1) % p.levels.size()];
              if (y == p.breakpoints[i] && left != p.levels[i]) {
                throw NonDifferentiableProfile("piecewise_constant profile at a breakpoint");
              }
            }
            return 0.0;
          },
          [x](const Sampled& s) { return sampled_derivative(s, x); },
      },
      params_);
}

bool ProfileFunction::smooth() const {
  switch (kind()) {
    case Kind::constant:
    case Kind::trig:
      return true;
    case Kind::sampled:
      return as<Sampled>()->order == 3;
    default:
      return false;
  }
}

ProfileFunction::Kind ProfileFunction::kind() const {
  return static_cast<Kind>(params_.index());
}

std::string ProfileFunction::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(Overloaded{
                 [&](const Constant& c) { os << "constant(value=" << c.value << ")"; },
                 [&](const Trig& t) {
                   os << "trig(mode=" << t.mode << ", phase=" << t.phase
                      << ", amplitude=" << t.amplitude << ", offset=" << t.offset << ")";
                 },
                 [&](const Cusp& c) {
                   os << "cusp(alpha=" << c.alpha << ", radius=" << c.radius << ")";
                 },
                 [&](const Step& s) {
                   os << "step(below=" << s.below << ", above=" << s.above
                      << ", jump=" << s.jump << ")";
                 },
                 [&](const SinInverse& s) { os << "sin_inverse(radius=" << s.radius << ")"; },
                 [&](const PiecewiseConstant& p) {
                   os << "piecewise_constant(pieces=" << p.levels.size() << ")";
                 },
                 [&](const Sampled& s) {
                   os << "sampled(n=" << s.values.size() << ", order=" << s.order << ")";
                 },
             },
             params_);
  return os.str();
}

}  // namespace shearlab
