#pragma once

#include <functional>
#include <string>
#include <vector>

#include "shearlab/profile.hpp"
#include "shearlab/shear_flow.hpp"
#include "shearlab/types.hpp"

namespace shearlab {

/// A sheet λ ↦ r(λ) in the plane with r(λ + 1) = r(λ) + (1, 0), carrying the
/// scalar density ω̃(λ). Quadrature uses the M nodes λⱼ = j/M.
class SheetCurve2D {
 public:
  using CurveFn = std::function<Vec2(double)>;
  using ScalarFn = std::function<double(double)>;

  SheetCurve2D(CurveFn position, CurveFn tangent, ScalarFn density, int nodes);

  /// r(λ) = (λ, height).
  static SheetCurve2D flat(ScalarFn density, int nodes, double height = 0.0);
  /// r(λ) = (λ, y(λ)) for a 1-periodic y with derivative dy.
  static SheetCurve2D graph(ScalarFn y, ScalarFn dy, ScalarFn density, int nodes);
  /// Trigonometric interpolation of samples of r₁(λ) − λ, r₂(λ) and ω̃ on
  /// λⱼ = j/M; M is the sample count.
  static SheetCurve2D sampled(const std::vector<double>& r1_minus_lambda,
                              const std::vector<double>& r2, const std::vector<double>& density);

  Vec2 position(double lambda) const { return position_(lambda); }
  Vec2 tangent(double lambda) const { return tangent_(lambda); }
  double density(double lambda) const { return density_(lambda); }
  double speed(double lambda) const { return tangent_(lambda).norm(); }
  int nodes() const { return nodes_; }
  double node(int j) const { return static_cast<double>(j) / nodes_; }

 private:
  CurveFn position_;
  CurveFn tangent_;
  ScalarFn density_;
  int nodes_;
};

/// max over node pairs of |λ − λ′| / |r(λ) − r(λ′)| with |λ − λ′| ≤ 1/2.
double chord_arc_constant(const SheetCurve2D& sheet);

/// Σ_m (d + m e₁)/|d + m e₁|² in closed form.
Vec2 periodic_kernel(const Vec2& d);

/// u(x) = (1/2π) R_{π/2} ∫ K(x − r) ω̃ |∂λr| dλ by the trapezoid rule on the
/// nodes. Refuses points closer to the nodes than 3 node spacings.
Vec2 biot_savart_2d(const SheetCurve2D& sheet, const Vec2& x);

/// Principal value on the sheet by the alternate-point rule: nodes λ + j/M
/// with j odd, weight 2/M. Needs even M.
Vec2 average_velocity_on_sheet(const SheetCurve2D& sheet, double lambda);

struct JumpReport {
  double normal_jump = 0.0;      ///< |(u₊ − u₋)·n|
  double tangential_jump = 0.0;  ///< n ∧ (u₊ − u₋)
  double density_residual = 0.0; ///< |tangential_jump·|∂λr| − ω̃·|∂λr||
  Vec2 probe_average = Vec2::Zero();  ///< (u₊ + u₋)/2
};

/// Probes u at r(λ) ± δn with n = R_{π/2}(∂λr/|∂λr|).
JumpReport jump_check(const SheetCurve2D& sheet, double lambda, double delta);

struct Example1Params {
  double alpha1 = 1.0;
  double beta1 = 0.0;
  double alpha3 = 1.0;
  double beta3 = 0.0;
  double xi1 = 0.5;
  double xi2 = 0.5;
};

/// u₁ = α₁ below ξ₂ and β₁ above; u₃ = α₃ below ξ₁ and β₃ above, as periodic steps.
ShearFlow example1_flow(const Example1Params& params);

struct PlanarPiece {
  std::string label;
  int axis = 0;          ///< the piece is {x_axis = offset}
  double offset = 0.0;   ///< reduced mod 1
  /// Extent in x₂ for the vertical pieces, [lo, hi] within [0, 1].
  double x2_lo = 0.0;
  double x2_hi = 1.0;
};

class Example1Surface {
 public:
  Example1Surface(std::vector<PlanarPiece> pieces, double t) : pieces_(std::move(pieces)), t_(t) {}
  const std::vector<PlanarPiece>& pieces() const { return pieces_; }
  double time() const { return t_; }
  bool contains(const Point3& x, double tol = 1e-12) const;
  std::string describe() const;

 private:
  std::vector<PlanarPiece> pieces_;
  double t_;
};

/// {x₂ = ξ₂} ∪ {x₁ = ξ₁ + tα₁, x₂ ≤ ξ₂} ∪ {x₁ = ξ₁ + tβ₁, x₂ ≥ ξ₂}.
Example1Surface example1_surface(const Example1Params& params, double t);

struct Example2Vorticity {
  Vec3 sheet_density = Vec3::Zero();
  double bulk_component = 0.0;
  double tangency_residual = 0.0;
};

/// Sheet density (t·u₁′, 1, 0)/√(1 + t²u₁′²) on Γ(t) = {x₁ = t·u₁(x₂)}, bulk
/// part −u₁′(x₂), and its dot product with the unit normal of Γ(t).
Example2Vorticity example2_vorticity(const ProfileFunction& u1, double t, double x2);

/// Velocity of the flat sheet {x₃ = 0} with in-plane density ω̃:
/// ½·sgn(x₃)·ω̃ × e₃.
Vec3 flat_sheet_velocity_3d(const Vec3& density, const Point3& x);

}  // namespace shearlab
