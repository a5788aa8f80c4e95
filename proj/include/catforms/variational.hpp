#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "catforms/family.hpp"
#include "catforms/geometry.hpp"
#include "catforms/integrator.hpp"

namespace catforms {

using ChartGradient = std::vector<std::array<double, 2>>;

/// Vertex chain in chart coordinates whose first and last vertices are
/// pinned during minimization.
struct Polyline {
  FamilySpec family;
  std::vector<ChartPoint> vertices;

  std::size_t size() const { return vertices.size(); }
  /// Throws InputError for fewer than 3 vertices or equal endpoints, and
  /// DomainError if a vertex is not admissible.
  void validate(const Guards& guards = {}) const;
};

/// n equally spaced vertices on the chart segment a -> b.
Polyline chord_polyline(const FamilySpec& family, ChartPoint a, ChartPoint b, std::size_t n);

/// n vertices equally spaced in the space-form arc length of the curve.
/// Between samples the position is the cubic Hermite interpolant in t with
/// the unit headings as slopes.
Polyline polyline_from_curve(const SampledCurve& curve, std::size_t n);

/// Inserts the chart midpoint of every segment (n -> 2n - 1 vertices).
Polyline refine(const Polyline& p);

/// Midpoint rule for the weighted length:
///   sum_k d(m_k)^alpha * l(m_k, p_{k+1} - p_k),  m_k = (p_k + p_{k+1}) / 2,
/// with l = |D| (plane), sqrt(Du^2 + cos^2(m_u) Dv^2) (sphere) and
/// |D| / m_v (half-plane). Throws DomainError if a midpoint is not admissible.
double discrete_energy(const Polyline& p, const Guards& guards = {});

/// Analytic gradient of discrete_energy in chart coordinates; the endpoint
/// rows are zero.
ChartGradient energy_gradient(const Polyline& p, const Guards& guards = {});

/// Largest |component| over the interior rows.
double max_gradient_component(const ChartGradient& g);

/// Conformal factor phi of a chart metric phi^2 (du^2 + dv^2), with its
/// chart gradient.
struct ConformalFactor {
  std::function<double(ChartPoint)> value;
  std::function<std::array<double, 2>(ChartPoint)> gradient;
};

/// phi = d^alpha (plane) or d^alpha / v (half-plane): the weighted length is
/// the length in the metric phi^2 (du^2 + dv^2). The sphere chart metric is
/// not conformally flat in (u, v), so spherical families throw
/// UnsupportedFamily.
ConformalFactor conformal_factor(const FamilySpec& family, const Guards& guards = {});

/// An energy over vertex chains with its gradient. The gradient rows of the
/// endpoints are ignored by the minimizer.
struct Objective {
  std::function<double(const std::vector<ChartPoint>&)> energy;
  std::function<ChartGradient(const std::vector<ChartPoint>&)> gradient;
};

Objective weighted_length_objective(const FamilySpec& family, const Guards& guards = {});

/// Midpoint-rule chart length in the metric phi^2 (du^2 + dv^2).
Objective conformal_length_objective(const ConformalFactor& phi);

struct MinimizerConfig {
  std::size_t max_iters = 200000;
  double grad_tol = 1e-10;     ///< on the largest interior gradient component
  double armijo = 1e-4;
  double initial_step = 1.0;
  /// Start each line search at twice the previous accepted step (capped by
  /// initial_step) instead of at initial_step.
  bool reuse_step = true;
  double min_step = 1e-30;     ///< line search gives up below this step
  /// Descend along the gradient with its component along the local chord
  /// p_{k+1} - p_{k-1} removed. Vertices then move across the curve only;
  /// sliding along it leaves the energy almost unchanged and lets vertices
  /// collapse onto their neighbours. grad_tol then applies to this
  /// projected gradient.
  bool normal_only = true;

  void validate() const;
};

enum class MinimizerStop { GradientTolerance, MaxIterations, LineSearchStalled };

std::string_view to_string(MinimizerStop s);

struct MinimizeResult {
  Polyline polyline;
  bool converged = false;
  MinimizerStop stop = MinimizerStop::MaxIterations;
  std::size_t iterations = 0;
  std::vector<double> energy_trace;  ///< energy of every accepted iterate, starting with p0
  double grad_max = 0.0;     ///< full gradient at the returned polyline
  double descent_max = 0.0;  ///< largest component of the descent direction
};

/// Gradient descent with Armijo backtracking (step halving). Trial steps
/// that leave the admissible region count as rejected and are halved. Once
/// a step passes the Armijo test the search keeps halving (or, when the
/// first trial passed, doubling up to initial_step) while the energy still
/// decreases.
/// Non-convergence is reported through `converged`, never thrown.
MinimizeResult minimize(const Polyline& p0, const MinimizerConfig& cfg, const Guards& guards = {});
MinimizeResult minimize(const Polyline& p0, const Objective& objective, const MinimizerConfig& cfg);

/// Coarse-to-fine minimization from the chord: the chord with about
/// (n - 1) / 2^levels + 1 vertices is minimized, then refined by midpoint
/// insertion and minimized again until n vertices are reached. iterations
/// and energy_trace cover the finest level only.
MinimizeResult minimize_from_chord(const FamilySpec& family, ChartPoint a, ChartPoint b,
                                   std::size_t n, const MinimizerConfig& cfg,
                                   const Guards& guards = {});

/// Max over the polyline vertices of the chart distance to the piecewise
/// linear interpolation of the curve samples.
double compare_to_ode(const Polyline& p, const SampledCurve& curve);

struct ShootingConfig {
  double h = 1e-3;
  double max_length = 20.0;  ///< chart arc-length budget per trial
  double tol = 1e-10;        ///< on the endpoint miss
  /// Interval for the initial heading. When absent, headings within pi/2 of
  /// the chord direction are scanned and the sign change closest to the
  /// chord direction is used.
  std::optional<std::pair<double, double>> bracket;
  std::size_t scan = 64;
  Guards guards;
};

struct ShootingResult {
  double theta0 = 0.0;
  double length = 0.0;  ///< chart arc length from a to the end point
  double miss = 0.0;    ///< signed offset from b on the section through b
  SampledCurve curve;   ///< re-integrated with a step that ends on the section
};

/// Signed miss of the trajectory from a with heading theta0: the trajectory
/// is followed until it crosses the line through b perpendicular to the
/// chord ab; the result is the offset of the crossing from b along the
/// left normal of the chord, and the arc length used. Returns nullopt if
/// the trajectory leaves the admissible region or exhausts the budget first.
std::optional<std::pair<double, double>> shooting_miss(const FamilySpec& family, ChartPoint a,
                                                       ChartPoint b, double theta0,
                                                       const ShootingConfig& cfg);

/// Two-point problem by bisection on the initial heading. Throws InputError
/// for equal endpoints and NonConvergence when no bracket is found or the
/// miss stays above tol.
ShootingResult shoot(const FamilySpec& family, ChartPoint a, ChartPoint b,
                     const ShootingConfig& cfg = {});

} // namespace catforms
