#pragma once

#include "catforms/family.hpp"
#include "catforms/geometry.hpp"

namespace catforms {

/// Realized curvature of a sampled curve next to the value its law prescribes.
struct CurvatureReport {
  double kappa_actual = 0.0;
  double kappa_target = 0.0;
  double residual = 0.0;  ///< kappa_actual - kappa_target

  static CurvatureReport make(double actual, double target) {
    return {actual, target, actual - target};
  }
};

enum class Admissibility { Ok, DomainGuard, PoleGuard };

/// Checks the family's admissible region with every margin multiplied by
/// `margin`: d > margin * eps_d, and additionally y > margin * eps_d on the
/// half-plane and u < pi/2 - margin * eps_pole on the sphere.
Admissibility check_admissible(Family family, ChartPoint p, const Guards& guards,
                               double margin = 1.0);

/// Throws DomainError unless check_admissible(...) == Ok.
void require_admissible(Family family, ChartPoint p, const Guards& guards);

/// Signed curvature (u'v'' - v'u'') / m^{3/2} of a plane curve, m = u'^2 + v'^2.
double chart_curvature(double du, double dv, double ddu, double ddv);

/// Hyperbolic geodesic curvature from the Euclidean one in the half-plane:
/// kappa_h = v kappa_e + u' / sqrt(m).
double hyperbolic_curvature(double v, double kappa_e, double du, double m);

/// Geodesic curvature on S^2 (normal N(p) = -p) of Psi(u(t), v(t)).
double sphere_geodesic_curvature(double u, double du, double dv, double ddu, double ddv);

/// Curvature prescribed by the family's law at `state`, measured in the
/// family's space form with the chart arc-length convention (m = 1).
/// Throws DomainError when the state is not admissible.
double target_curvature(const FamilySpec& family, const CurveState& state,
                        const Guards& guards = {});

/// Coordinate-free form alpha <n, field> / d of the same law.
double dual_form_target(const FamilySpec& family, const CurveState& state,
                        const Guards& guards = {});

/// Law f'(u) v' cos u / (f |gamma'|) for an arbitrary weight f(u) on S^2.
double weighted_sphere_law(double f, double fprime, const CurveState& state);

/// Converts the chart curvature theta' of the arc-length flow into the
/// curvature measured in the family's space form.
double space_curvature(Family family, const CurveState& state, double chart_kappa);

/// theta' = kappa_e of the chart arc-length flow realizing the family's law.
double theta_rhs(const FamilySpec& family, const CurveState& state, const Guards& guards = {});

/// Curvature of the graph v -> (u(v), v) of a spherical catenary with first
/// integral c, as a function of u alone (alpha = 1). The sign follows the
/// graph convention u'' / (1 + u'^2)^{3/2}, so the flow's theta' is its negative.
double paper_mode_sphere_rhs(double c, double u);

} // namespace catforms
