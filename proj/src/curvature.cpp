#include "catforms/curvature.hpp"

#include <cmath>
#include <numbers>

#include "catforms/errors.hpp"

namespace catforms {

namespace {

// |gamma'| on S^2 for the chart velocity (u', v').
double sphere_speed(double u, double du, double dv) {
  const double cu = std::cos(u);
  return std::sqrt(du * du + dv * dv * cu * cu);
}

} // namespace

Admissibility check_admissible(Family family, ChartPoint p, const Guards& guards,
                               double margin) {
  const double eps_d = margin * guards.eps_d;
  if (!std::isfinite(p.u) || !std::isfinite(p.v)) return Admissibility::DomainGuard;
  if (is_spherical(family)) {
    if (p.u >= std::numbers::pi / 2 - margin * guards.eps_pole) return Admissibility::PoleGuard;
  } else if (is_hyperbolic(family)) {
    if (!(p.v > eps_d)) return Admissibility::DomainGuard;
  }
  double d = 0.0;
  try {
    d = distance_to_reference(family, p);
  } catch (const DomainError&) {
    return Admissibility::DomainGuard;
  }
  return d > eps_d ? Admissibility::Ok : Admissibility::DomainGuard;
}

void require_admissible(Family family, ChartPoint p, const Guards& guards) {
  switch (check_admissible(family, p, guards)) {
  case Admissibility::Ok: return;
  case Admissibility::PoleGuard: throw DomainError("state within the pole guard");
  case Admissibility::DomainGuard: throw DomainError("state within the reference-line guard");
  }
}

double chart_curvature(double du, double dv, double ddu, double ddv) {
  const double m = du * du + dv * dv;
  if (!(m > 0.0)) throw DegenerateError("chart curvature of a stationary curve");
  return (du * ddv - dv * ddu) / std::pow(m, 1.5);
}

double hyperbolic_curvature(double v, double kappa_e, double du, double m) {
  return v * kappa_e + du / std::sqrt(m);
}

double sphere_geodesic_curvature(double u, double du, double dv, double ddu, double ddv) {
  const double speed = sphere_speed(u, du, dv);
  if (!(speed > 0.0)) throw DegenerateError("geodesic curvature of a stationary curve");
  const double su = std::sin(u), cu = std::cos(u);
  const double num = dv * (2.0 * du * du * su + dv * dv * cu * cu * su + ddu * cu) - du * ddv * cu;
  return num / (speed * speed * speed);
}

double target_curvature(const FamilySpec& family, const CurveState& s, const Guards& guards) {
  require_admissible(family.kind, s.point(), guards);
  const double a = family.alpha;
  if (a == 0.0) return 0.0;
  const double du = s.du(), dv = s.dv();
  const double u = s.u, v = s.v;
  switch (family.kind) {
  case Family::Euclidean: return a * du / v;
  case Family::Sphere: return a * dv * std::cos(u) / (u * sphere_speed(u, du, dv));
  case Family::SphereExtrinsic: {
    const double cu = std::cos(u);
    return a * dv * cu * cu / (std::sin(u) * sphere_speed(u, du, dv));
  }
  case Family::HypGeodesic: {
    const double r = std::hypot(u, v);
    const double d = distance_to_reference(family.kind, s.point());
    return -(a / d) * (u * du + v * dv) / r;
  }
  case Family::HypHorodist: {
    const double d_hor = u / v;
    return -a * (u * du + v * dv) / (d_hor * v);
  }
  case Family::Horocycle: return a * du / std::log(v);
  }
  return 0.0;
}

double dual_form_target(const FamilySpec& family, const CurveState& s, const Guards& guards) {
  require_admissible(family.kind, s.point(), guards);
  if (family.alpha == 0.0) return 0.0;
  const Space space = space_of(family.kind);
  const AmbientVec n = unit_normal(space, s);
  const AmbientVec field = field_at(family.kind, s.point(), guards);
  const double d = distance_to_reference(family.kind, s.point());
  return family.alpha * metric_inner(space, s.point(), n, field) / d;
}

double weighted_sphere_law(double f, double fprime, const CurveState& s) {
  if (f == 0.0) throw DegenerateError("weight f vanishes");
  const double du = s.du(), dv = s.dv();
  const double speed = sphere_speed(s.u, du, dv);
  if (!(speed > 0.0)) throw DegenerateError("stationary curve on the sphere");
  return fprime * dv * std::cos(s.u) / (f * speed);
}

double space_curvature(Family family, const CurveState& s, double chart_kappa) {
  const double du = s.du(), dv = s.dv();
  switch (space_of(family)) {
  case Space::EuclideanPlane: return chart_kappa;
  case Space::HalfPlane: return hyperbolic_curvature(s.v, chart_kappa, du, 1.0);
  case Space::Sphere:
    return sphere_geodesic_curvature(s.u, du, dv, -dv * chart_kappa, du * chart_kappa);
  }
  return chart_kappa;
}

double theta_rhs(const FamilySpec& family, const CurveState& s, const Guards& guards) {
  require_admissible(family.kind, s.point(), guards);
  const double a = family.alpha;
  const double du = s.du(), dv = s.dv();
  const double u = s.u, v = s.v;
  switch (family.kind) {
  case Family::Euclidean: return a * du / v;
  case Family::HypGeodesic: {
    const double r = std::hypot(u, v);
    const double d = distance_to_reference(family.kind, s.point());
    const double law = a == 0.0 ? 0.0 : a * (u * du + v * dv) / (r * d);
    return -(law + du) / v;
  }
  case Family::HypHorodist: {
    const double law = a == 0.0 ? 0.0 : a * (u * du + v * dv) / ((u / v) * v);
    return -(law + du) / v;
  }
  case Family::Horocycle: {
    const double db = std::log(v);
    return (a - db) * du / (v * db);
  }
  case Family::Sphere:
  case Family::SphereExtrinsic: {
    // With u' = cos(theta), v' = sin(theta) one has u'v'' - v'u'' = theta', and
    // the geodesic-curvature numerator becomes
    //   v' sin u (2u'^2 + v'^2 cos^2 u) - theta' cos u.
    const double su = std::sin(u), cu = std::cos(u);
    const double speed = sphere_speed(u, du, dv);
    const double kappa = target_curvature(family, s, guards);
    return (dv * su * (2.0 * du * du + dv * dv * cu * cu) - kappa * speed * speed * speed) / cu;
  }
  }
  return 0.0;
}

double paper_mode_sphere_rhs(double c, double u) {
  const double su = std::sin(u), cu = std::cos(u);
  const double c2 = c * c;
  // u^2 cos^4 u + c^2 sin^2 u, the same as cos^2 u (u^2 cos^2 u - c^2) + c^2
  // without the cancellation near the equator
  const double bracket = u * u * cu * cu * cu * cu + c2 * su * su;
  if (!(bracket > 0.0)) throw DegenerateError("paper-mode curvature: non-positive radicand");
  const double num = c2 * su + u * cu * cu * cu - 2.0 * u * u * su * cu * cu;
  return c * cu * num / std::pow(bracket, 1.5);
}

} // namespace catforms
