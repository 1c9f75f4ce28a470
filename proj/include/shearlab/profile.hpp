#pragma once

#include <string>
#include <variant>
#include <vector>

namespace shearlab {

/// A 1-periodic scalar profile u(ξ) from a fixed catalog of closed forms, or
/// interpolated grid samples. Profiles are the building blocks u₁ and u₃ of a
/// shear flow and are total on ℝ.
///
/// The rough kinds (cusp, sin_inverse) coincide with their model function on
/// |ξ| ≤ r, r = 1/4 by default, and are blended to a constant on
/// r ≤ |ξ| ≤ 1/2 by a fixed C^∞ transition so the periodic extension is C^∞
/// away from ξ = 0. The cusp (even) is blended to r^α, sin_inverse (odd) to 0.
class ProfileFunction {
 public:
  struct Constant {
    double value = 0.0;
  };
  /// offset + amplitude · sin(2π·mode·ξ + phase)
  struct Trig {
    int mode = 1;
    double phase = 0.0;
    double amplitude = 1.0;
    double offset = 0.0;
  };
  struct Cusp {
    double alpha = 0.5;
    double radius = 0.25;
  };
  /// below on [0, jump) and above on [jump, 1), repeated with period 1.
  struct Step {
    double below = 1.0;
    double above = 0.0;
    double jump = 0.5;
  };
  struct SinInverse {
    double radius = 0.25;
  };
  /// levels[i] on [breakpoints[i], breakpoints[i+1]); the last level wraps
  /// around through 0 to breakpoints[0].
  struct PiecewiseConstant {
    std::vector<double> breakpoints;
    std::vector<double> levels;
  };
  /// Values on the nodes j/N, interpolated with order 0, 1 or 3.
  struct Sampled {
    std::vector<double> values;
    int order = 1;
  };

  enum class Kind { constant, trig, cusp, step, sin_inverse, piecewise_constant, sampled };

  static ProfileFunction constant(double value);
  static ProfileFunction trig(int mode, double phase = 0.0, double amplitude = 1.0,
                              double offset = 0.0);
  static ProfileFunction cusp(double alpha, double radius = 0.25);
  static ProfileFunction step(double below, double above, double jump);
  static ProfileFunction sin_inverse(double radius = 0.25);
  static ProfileFunction piecewise_constant(std::vector<double> breakpoints,
                                            std::vector<double> levels);
  static ProfileFunction sampled(std::vector<double> values, int order);

  ProfileFunction() : ProfileFunction(constant(0.0)) {}

  double operator()(double x) const;

  /// Classical derivative. Throws NonDifferentiableProfile where none exists.
  double derivative(double x) const;

  /// True when derivative() is defined at every point.
  bool smooth() const;

  Kind kind() const;
  std::string describe() const;

  template <class T>
  const T* as() const {
    return std::get_if<T>(&params_);
  }

 private:
  using Params =
      std::variant<Constant, Trig, Cusp, Step, SinInverse, PiecewiseConstant, Sampled>;
  explicit ProfileFunction(Params p) : params_(std::move(p)) {}

  Params params_;
};

/// C^∞ transition on [0, 1]: 0 for τ ≤ 0, 1 for τ ≥ 1, all derivatives
/// vanishing at both ends.
double smooth_transition(double tau);
double smooth_transition_derivative(double tau);

}  // namespace shearlab
