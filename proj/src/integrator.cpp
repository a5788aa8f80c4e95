#include "catforms/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "catforms/errors.hpp"

namespace catforms {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Derivative {
  double du, dv, dtheta;
};

// Derivative at x of the quadratic through (x0,f0), (x1,f1), (x2,f2).
double lagrange_slope(double x0, double x1, double x2, double f0, double f1, double f2, double x) {
  const double l0 = ((x - x1) + (x - x2)) / ((x0 - x1) * (x0 - x2));
  const double l1 = ((x - x0) + (x - x2)) / ((x1 - x0) * (x1 - x2));
  const double l2 = ((x - x0) + (x - x1)) / ((x2 - x0) * (x2 - x1));
  return f0 * l0 + f1 * l1 + f2 * l2;
}

StopReason stop_for(Admissibility a) {
  return a == Admissibility::PoleGuard ? StopReason::PoleGuard : StopReason::DomainGuard;
}

CurveState advance(const CurveState& s, const Derivative& k, double step) {
  return {s.u + step * k.du, s.v + step * k.dv, s.theta + step * k.dtheta};
}

// Throws DomainError / DegenerateError from the law; NumericFailure is
// reported through a non-finite dtheta.
Derivative field(const FamilySpec& family, const CurveState& s, const Guards& guards) {
  return {std::cos(s.theta), std::sin(s.theta), flow_rhs(family, s, guards)};
}

} // namespace

void IntegratorConfig::validate() const {
  if (!(h > 0.0) || !std::isfinite(h)) throw InputError("step h must be positive");
  if (!(max_length > 0.0) || !std::isfinite(max_length))
    throw InputError("max_length must be positive");
  if (!(eps_d > 0.0) || !(eps_pole > 0.0)) throw InputError("guards must be positive");
}

std::string_view to_string(StopReason r) {
  switch (r) {
  case StopReason::LengthExhausted: return "length-exhausted";
  case StopReason::DomainGuard: return "domain-guard";
  case StopReason::PoleGuard: return "pole-guard";
  case StopReason::NumericFailure: return "numeric-failure";
  }
  return "unknown";
}

StopReason parse_stop_reason(std::string_view s) {
  for (auto r : {StopReason::LengthExhausted, StopReason::DomainGuard, StopReason::PoleGuard,
                 StopReason::NumericFailure})
    if (to_string(r) == s) return r;
  throw FormatError("unknown stop reason '" + std::string(s) + "'");
}

double flow_rhs(const FamilySpec& family, const CurveState& s, const Guards& guards) {
  if (family.paper_c) {
    require_admissible(family.kind, s.point(), guards);
    return -paper_mode_sphere_rhs(*family.paper_c, s.u);
  }
  return theta_rhs(family, s, guards);
}

double law_curvature(const FamilySpec& family, const CurveState& s, const Guards& guards) {
  if (family.paper_c) return space_curvature(family.kind, s, flow_rhs(family, s, guards));
  return target_curvature(family, s, guards);
}

CurveState rk4_step(const FamilySpec& family, const CurveState& s, double h,
                    const Guards& guards) {
  const Derivative k1 = field(family, s, guards);
  const Derivative k2 = field(family, advance(s, k1, 0.5 * h), guards);
  const Derivative k3 = field(family, advance(s, k2, 0.5 * h), guards);
  const Derivative k4 = field(family, advance(s, k3, h), guards);
  return {s.u + h / 6.0 * (k1.du + 2.0 * (k2.du + k3.du) + k4.du),
          s.v + h / 6.0 * (k1.dv + 2.0 * (k2.dv + k3.dv) + k4.dv),
          s.theta + h / 6.0 * (k1.dtheta + 2.0 * (k2.dtheta + k3.dtheta) + k4.dtheta)};
}

bool has_first_integral(Family f) { return f == Family::Sphere || f == Family::Horocycle; }

double first_integral(const FamilySpec& family, const CurveState& s) {
  const double du = s.du(), dv = s.dv();
  switch (family.kind) {
  case Family::Sphere: {
    const double cu = std::cos(s.u);
    return std::pow(s.u, family.alpha) * dv * cu * cu / std::sqrt(du * du + dv * dv * cu * cu);
  }
  case Family::Horocycle:
    return du * std::pow(std::log(s.v), family.alpha) / (s.v * std::hypot(du, dv));
  default:
    throw UnsupportedFamily("no first integral for family " + std::string(to_string(family.kind)));
  }
}

SampledCurve integrate(const FamilySpec& family, const CurveState& initial,
                       const IntegratorConfig& cfg) {
  family.validate();
  cfg.validate();
  const Guards guards = cfg.guards();
  if (check_admissible(family.kind, initial.point(), guards, 2.0) != Admissibility::Ok)
    throw InputError("initial state is not admissible for family " +
                     std::string(to_string(family.kind)));

  SampledCurve curve;
  curve.family = family;
  curve.h = cfg.h;
  if (family.paper_c) {
    const double c_state = first_integral(family, initial);
    if (std::abs(c_state - *family.paper_c) > 1e-9) {
      std::ostringstream msg;
      msg.precision(15);
      msg << "paper-mode constant c = " << *family.paper_c
          << " differs from the first integral of the initial state (" << c_state << ")";
      curve.warnings.push_back(msg.str());
    }
  }

  const auto steps = static_cast<std::size_t>(std::floor(cfg.max_length / cfg.h + 1e-9));
  curve.states.reserve(steps + 1);
  curve.t.reserve(steps + 1);
  curve.states.push_back(initial);
  curve.t.push_back(0.0);
  curve.stop_reason = StopReason::LengthExhausted;

  const double h = cfg.h;
  CurveState s = initial;
  for (std::size_t i = 1; i <= steps; ++i) {
    CurveState next;
    try {
      next = rk4_step(family, s, h, guards);
    } catch (const DomainError&) {
      // A stage left the admissible region; report the guard closest to s.
      const bool pole = is_spherical(family.kind) &&
                        std::numbers::pi / 2 - s.u < distance_to_reference(family.kind, s.point());
      curve.stop_reason = pole ? StopReason::PoleGuard : StopReason::DomainGuard;
      break;
    } catch (const DegenerateError&) {
      curve.stop_reason = StopReason::NumericFailure;
      break;
    }
    if (!std::isfinite(next.theta) || !std::isfinite(next.u) || !std::isfinite(next.v)) {
      curve.stop_reason = StopReason::NumericFailure;
      break;
    }
    const Admissibility a = check_admissible(family.kind, next.point(), guards);
    if (a != Admissibility::Ok) {
      curve.stop_reason = stop_for(a);
      break;
    }
    s = next;
    curve.states.push_back(s);
    curve.t.push_back(static_cast<double>(i) * h);
  }

  compute_diagnostics(curve, guards);
  return curve;
}

void compute_diagnostics(SampledCurve& curve, const Guards& guards) {
  const std::size_t n = curve.states.size();
  curve.curvature.assign(n, CurvatureReport::make(kNaN, kNaN));
  curve.first_integral.assign(n, kNaN);
  const bool fi = has_first_integral(curve.family.kind);
  for (std::size_t i = 0; i < n; ++i) {
    const CurveState& s = curve.states[i];
    if (fi) curve.first_integral[i] = first_integral(curve.family, s);
    if (n < 3) continue;
    // three-point stencil centred where possible, one-sided at the ends
    const std::size_t j = i == 0 ? 1 : (i == n - 1 ? n - 2 : i);
    const double dtheta =
        lagrange_slope(curve.t[j - 1], curve.t[j], curve.t[j + 1], curve.states[j - 1].theta,
                       curve.states[j].theta, curve.states[j + 1].theta, curve.t[i]);
    double target = kNaN;
    try {
      target = law_curvature(curve.family, s, guards);
    } catch (const Error&) {
    }
    const double actual = space_curvature(curve.family.kind, s, dtheta);
    curve.curvature[i] = CurvatureReport::make(actual, target);
  }
}

double first_integral_drift(const SampledCurve& curve) {
  if (!has_first_integral(curve.family.kind) || curve.empty()) return kNaN;
  double drift = 0.0;
  const double c0 = curve.first_integral.front();
  for (double c : curve.first_integral) drift = std::max(drift, std::abs(c - c0));
  return drift;
}

double metric_segment_length(Family family, ChartPoint a, ChartPoint b) {
  const double du = b.u - a.u, dv = b.v - a.v;
  auto speed = [&](double tau) {
    const double u = a.u + tau * du, v = a.v + tau * dv;
    switch (space_of(family)) {
    case Space::EuclideanPlane: return std::hypot(du, dv);
    case Space::HalfPlane: return std::hypot(du, dv) / v;
    case Space::Sphere: {
      const double cu = std::cos(u);
      return std::sqrt(du * du + cu * cu * dv * dv);
    }
    }
    return 0.0;
  };
  return (speed(0.0) + 4.0 * speed(0.5) + speed(1.0)) / 6.0;
}

MetricResample resample_metric_arclength(const SampledCurve& input) {
  const std::size_t n = input.size();
  if (n == 0) throw InputError("cannot resample an empty curve");
  SampledCurve curve = input;
  if (curve.t.size() != n) throw InputError("curve has mismatched t and states");
  if (curve.curvature.size() != n || curve.first_integral.size() != n) compute_diagnostics(curve);
  MetricResample out;
  out.curve = curve;
  std::vector<double> s(n, 0.0);
  for (std::size_t i = 1; i < n; ++i)
    s[i] = s[i - 1] + metric_segment_length(curve.family.kind, curve.states[i - 1].point(),
                                            curve.states[i].point());
  out.total_length = s.back();
  if (n == 1) return out;

  const double ds = out.total_length / static_cast<double>(n - 1);
  out.curve.h = ds;
  std::size_t seg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double target = k + 1 == n ? out.total_length : ds * static_cast<double>(k);
    while (seg + 2 < n && s[seg + 1] < target) ++seg;
    const double len = s[seg + 1] - s[seg];
    const double w = len > 0.0 ? std::clamp((target - s[seg]) / len, 0.0, 1.0) : 0.0;
    const CurveState& a = curve.states[seg];
    const CurveState& b = curve.states[seg + 1];
    auto lerp = [w](double x, double y) { return x + w * (y - x); };
    out.curve.t[k] = target;
    out.curve.states[k] = {lerp(a.u, b.u), lerp(a.v, b.v), lerp(a.theta, b.theta)};
    const auto& ca = curve.curvature[seg];
    const auto& cb = curve.curvature[seg + 1];
    out.curve.curvature[k] = CurvatureReport::make(lerp(ca.kappa_actual, cb.kappa_actual),
                                                   lerp(ca.kappa_target, cb.kappa_target));
    out.curve.first_integral[k] = lerp(curve.first_integral[seg], curve.first_integral[seg + 1]);
  }
  return out;
}

} // namespace catforms
