#include "catforms/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "catforms/errors.hpp"

namespace catforms {

namespace {

double simpson(double fa, double fm, double fb, double a, double b) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                    double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(fa, flm, fm, a, m);
  const double right = simpson(fm, frm, fb, m, b);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0) throw QuadratureError("adaptive Simpson did not converge");
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

void require_graph_family(const FamilySpec& family) {
  if (family.kind != Family::Sphere && family.kind != Family::Horocycle)
    throw UnsupportedFamily("graph quadrature exists only for the sphere and horocycle families");
}

void require_in_chart(const FamilySpec& family, double x) {
  if (family.kind == Family::Sphere && !(x > 0.0 && x < std::numbers::pi / 2))
    throw InputError("sphere graph variable u must lie in (0, pi/2)");
  if (family.kind == Family::Horocycle && !(x > 1.0))
    throw InputError("horocycle graph variable v must exceed 1");
}

// The radicand factors as g(x) = s(x)^2 (P(x) - c)(P(x) + c) with the profile
// P(x) = x^a cos x, s = 1 on the sphere and P(t) = (log t)^a / t, s = t for
// the horocycle family. Next to a turning point r (P(r) = c) the difference
// P(r + delta) - P(r) is evaluated without cancellation.
struct Profile {
  Family kind;
  double alpha;

  double value(double x) const {
    if (kind == Family::Sphere) return std::pow(x, alpha) * std::cos(x);
    return std::pow(std::log(x), alpha) / x;
  }

  double scale(double x) const { return kind == Family::Sphere ? 1.0 : x; }

  double difference(double r, double delta) const {
    const double x = r + delta;
    if (kind == Family::Sphere) {
      const double dcos = -2.0 * std::sin(r + 0.5 * delta) * std::sin(0.5 * delta);
      const double dpow = std::pow(r, alpha) * std::expm1(alpha * std::log1p(delta / r));
      return std::pow(x, alpha) * dcos + std::cos(r) * dpow;
    }
    const double lr = std::log(r);
    const double dlog = std::log1p(delta / r);
    const double dpow = std::pow(lr, alpha) * std::expm1(alpha * std::log1p(dlog / lr));
    return dpow / x - std::pow(lr, alpha) * delta / (r * x);
  }

  double slope(double x) const {
    if (kind == Family::Sphere)
      return alpha * std::pow(x, alpha - 1.0) * std::cos(x) - std::pow(x, alpha) * std::sin(x);
    const double l = std::log(x);
    return (alpha * std::pow(l, alpha - 1.0) - std::pow(l, alpha)) / (x * x);
  }
};

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return simpson_step(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, max_depth);
}

double bisect_root(const std::function<double(double)>& f, double a, double b, double tol) {
  double fa = f(a);
  if (fa == 0.0) return a;
  const double fb = f(b);
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) throw InputError("bisection bracket has no sign change");
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    if (m == a || m == b || std::abs(b - a) <= tol) break;
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

double graph_radicand(const FamilySpec& family, double c, double x) {
  require_graph_family(family);
  require_in_chart(family, x);
  if (family.kind == Family::Sphere) {
    const double cu = std::cos(x);
    return std::pow(x, 2.0 * family.alpha) * cu * cu - c * c;
  }
  return std::pow(std::log(x), 2.0 * family.alpha) - c * c * x * x;
}

AdmissibleInterval admissible_interval(const FamilySpec& family, double c, double lo, double hi,
                                       const QuadratureConfig& cfg) {
  require_graph_family(family);
  if (!(lo < hi)) throw InputError("graph range must satisfy lo < hi");
  require_in_chart(family, lo);
  require_in_chart(family, hi);
  const std::size_t m = std::max<std::size_t>(cfg.scan, 8);
  auto g = [&](double x) { return graph_radicand(family, c, x); };
  auto positive = [&](double x) { return g(x) > 0.0; };

  std::vector<double> xs(m + 1);
  std::vector<bool> pos(m + 1);
  for (std::size_t i = 0; i <= m; ++i) {
    xs[i] = i == m ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(m);
    pos[i] = positive(xs[i]);
  }
  std::size_t first = m + 1, last = 0, components = 0;
  for (std::size_t i = 0; i <= m; ++i) {
    if (!pos[i]) continue;
    if (i == 0 || !pos[i - 1]) ++components;
    if (first > m) first = i;
    last = i;
  }
  if (components == 0) throw QuadratureError("radicand is non-positive throughout the range");
  if (components > 1) throw QuadratureError("range spans several admissible intervals");

  AdmissibleInterval out{lo, hi, false, false};
  auto edge = [&](double outside, double inside) {
    return bisect_root([&](double x) { return positive(x) ? 1.0 : -1.0; }, outside, inside);
  };
  if (first > 0) {
    out.lo = edge(xs[first - 1], xs[first]);
    out.lo_turning = true;
  } else if (g(lo) <= cfg.eps_rad) {
    out.lo_turning = true;
  }
  if (last < m) {
    out.hi = edge(xs[last + 1], xs[last]);
    out.hi_turning = true;
  } else if (g(hi) <= cfg.eps_rad) {
    out.hi_turning = true;
  }
  if (!(out.lo < out.hi)) throw QuadratureError("admissible interval is degenerate");
  return out;
}

SampledCurve graph_by_quadrature(const FamilySpec& family, double c, double lo, double hi,
                                 std::size_t n, const QuadratureConfig& cfg) {
  require_graph_family(family);
  if (n < 2) throw InputError("graph quadrature needs at least two samples");
  if (c == 0.0) throw InputError("graph quadrature needs a non-zero first integral");
  const AdmissibleInterval iv = admissible_interval(family, c, lo, hi, cfg);
  const double a = iv.lo, b = iv.hi, w = b - a;
  const bool sphere = family.kind == Family::Sphere;

  const Profile profile{family.kind, family.alpha};
  auto numerator = [&](double x) { return sphere ? c / std::cos(x) : c * x; };
  // Limit of N / sqrt(g) * dx/dphi at a turning point r, where
  // g ~ s^2 * 2c * P'(r) (x - r) and x - r ~ w phi^2 / 4.
  auto turning_limit = [&](double r) {
    const double gslope = profile.scale(r) * profile.scale(r) * 2.0 * std::abs(c) *
                          std::abs(profile.slope(r));
    return numerator(r) * std::sqrt(w) / std::sqrt(gslope);
  };
  struct Point {
    double x, g;
  };
  // x(phi) = a + w sin^2(phi/2) = b - w cos^2(phi/2)
  auto point_at = [&](double phi) -> Point {
    const double half = 0.5 * phi;
    if (iv.lo_turning && phi <= 0.5 * std::numbers::pi) {
      const double delta = w * std::sin(half) * std::sin(half);
      const double x = a + delta;
      const double s2 = profile.scale(x) * profile.scale(x);
      return {x, s2 * profile.difference(a, delta) * (profile.value(x) + profile.value(a))};
    }
    if (iv.hi_turning && phi > 0.5 * std::numbers::pi) {
      const double delta = -w * std::cos(half) * std::cos(half);
      const double x = b + delta;
      const double s2 = profile.scale(x) * profile.scale(x);
      return {x, s2 * profile.difference(b, delta) * (profile.value(x) + profile.value(b))};
    }
    const double x = a + w * std::sin(half) * std::sin(half);
    return {x, graph_radicand(family, c, x)};
  };
  auto integrand = [&](double phi) {
    if (phi <= 0.0) return iv.lo_turning ? turning_limit(a) : 0.0;
    if (phi >= std::numbers::pi) return iv.hi_turning ? turning_limit(b) : 0.0;
    const Point p = point_at(phi);
    if (!(p.g > 0.0)) throw QuadratureError("radicand vanished inside the admissible interval");
    return numerator(p.x) / std::sqrt(p.g) * w * 0.5 * std::sin(phi);
  };

  SampledCurve curve;
  curve.family = family;
  curve.family.paper_c.reset();
  curve.h = 0.0;
  curve.states.reserve(n);
  curve.t.reserve(n);
  double integral = 0.0;
  const double piece_tol = cfg.tol / static_cast<double>(n - 1);
  auto phi_at = [n](std::size_t k) {
    return k + 1 == n ? std::numbers::pi
                      : std::numbers::pi * static_cast<double>(k) / static_cast<double>(n - 1);
  };
  for (std::size_t k = 0; k < n; ++k) {
    const double phi = phi_at(k);
    if (k > 0) integral += adaptive_simpson(integrand, phi_at(k - 1), phi, piece_tol, cfg.max_depth);
    const Point p = k == 0 ? Point{a, 0.0} : (k + 1 == n ? Point{b, 0.0} : point_at(phi));
    const double x = p.x;
    const double root =
        (k == 0 && iv.lo_turning) || (k + 1 == n && iv.hi_turning)
            ? 0.0
            : std::sqrt(std::max(k == 0 || k + 1 == n ? graph_radicand(family, c, x) : p.g, 0.0));
    CurveState s;
    if (sphere) {
      s = {x, integral, std::atan2(numerator(x), root)};
    } else {
      s = {integral, x, std::atan2(root, numerator(x))};
    }
    if (!curve.states.empty()) {
      const CurveState& p = curve.states.back();
      curve.t.push_back(curve.t.back() + std::hypot(s.u - p.u, s.v - p.v));
    } else {
      curve.t.push_back(0.0);
    }
    curve.states.push_back(s);
  }
  compute_diagnostics(curve);
  return curve;
}

} // namespace catforms
