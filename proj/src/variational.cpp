#include "catforms/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "catforms/curvature.hpp"
#include "catforms/errors.hpp"

namespace catforms {

namespace {

using Vertices = std::vector<ChartPoint>;

ChartPoint midpoint(ChartPoint a, ChartPoint b) { return {0.5 * (a.u + b.u), 0.5 * (a.v + b.v)}; }

// Weight d^alpha and its chart gradient at an admissible point.
struct Weight {
  double value;
  std::array<double, 2> grad;
};

Weight weight_at(const FamilySpec& family, ChartPoint m, const Guards& guards) {
  require_admissible(family.kind, m, guards);
  const double a = family.alpha;
  if (a == 0.0) return {1.0, {0.0, 0.0}};
  const double d = distance_to_reference(family.kind, m);
  const auto gd = distance_gradient(family.kind, m);
  const double w = std::pow(d, a);
  const double dw = a * w / d;
  return {w, {dw * gd[0], dw * gd[1]}};
}

// Metric length of the segment with chart increment (du, dv) evaluated at
// the midpoint m, with partial derivatives in m and in the increment.
struct SegmentLength {
  double value;
  std::array<double, 2> d_mid;
  std::array<double, 2> d_inc;
};

SegmentLength segment_length(Space space, ChartPoint m, double du, double dv) {
  const double chord = std::hypot(du, dv);
  switch (space) {
  case Space::EuclideanPlane: {
    if (chord == 0.0) return {0.0, {0.0, 0.0}, {0.0, 0.0}};
    return {chord, {0.0, 0.0}, {du / chord, dv / chord}};
  }
  case Space::Sphere: {
    const double c = std::cos(m.u), s = std::sin(m.u);
    const double l = std::sqrt(du * du + c * c * dv * dv);
    if (l == 0.0) return {0.0, {0.0, 0.0}, {0.0, 0.0}};
    return {l, {-c * s * dv * dv / l, 0.0}, {du / l, c * c * dv / l}};
  }
  case Space::HalfPlane: {
    const double l = chord / m.v;
    if (chord == 0.0) return {0.0, {0.0, 0.0}, {0.0, 0.0}};
    return {l, {0.0, -l / m.v}, {du / (chord * m.v), dv / (chord * m.v)}};
  }
  }
  return {0.0, {0.0, 0.0}, {0.0, 0.0}};
}

void require_vertices_admissible(const FamilySpec& family, const Vertices& x,
                                 const Guards& guards) {
  for (const ChartPoint& p : x) require_admissible(family.kind, p, guards);
}

double weighted_energy(const FamilySpec& family, const Vertices& x, const Guards& guards) {
  const Space space = space_of(family.kind);
  double e = 0.0;
  for (std::size_t k = 0; k + 1 < x.size(); ++k) {
    const ChartPoint m = midpoint(x[k], x[k + 1]);
    const Weight w = weight_at(family, m, guards);
    e += w.value * segment_length(space, m, x[k + 1].u - x[k].u, x[k + 1].v - x[k].v).value;
  }
  return e;
}

ChartGradient weighted_gradient(const FamilySpec& family, const Vertices& x,
                                const Guards& guards) {
  const Space space = space_of(family.kind);
  ChartGradient g(x.size(), {0.0, 0.0});
  for (std::size_t k = 0; k + 1 < x.size(); ++k) {
    const ChartPoint m = midpoint(x[k], x[k + 1]);
    const Weight w = weight_at(family, m, guards);
    const SegmentLength l = segment_length(space, m, x[k + 1].u - x[k].u, x[k + 1].v - x[k].v);
    for (int i = 0; i < 2; ++i) {
      const double f_mid = w.grad[i] * l.value + w.value * l.d_mid[i];
      const double f_inc = w.value * l.d_inc[i];
      g[k][i] += 0.5 * f_mid - f_inc;
      g[k + 1][i] += 0.5 * f_mid + f_inc;
    }
  }
  g.front() = {0.0, 0.0};
  g.back() = {0.0, 0.0};
  return g;
}

double chart_distance(ChartPoint a, ChartPoint b) { return std::hypot(a.u - b.u, a.v - b.v); }

double point_segment_distance(ChartPoint p, ChartPoint a, ChartPoint b) {
  const double du = b.u - a.u, dv = b.v - a.v;
  const double len2 = du * du + dv * dv;
  double t = len2 > 0.0 ? ((p.u - a.u) * du + (p.v - a.v) * dv) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.u - a.u - t * du, p.v - a.v - t * dv);
}

} // namespace

void Polyline::validate(const Guards& guards) const {
  family.validate();
  if (vertices.size() < 3) throw InputError("a polyline needs at least 3 vertices");
  if (vertices.front() == vertices.back())
    throw InputError("polyline endpoints coincide");
  require_vertices_admissible(family, vertices, guards);
}

Polyline chord_polyline(const FamilySpec& family, ChartPoint a, ChartPoint b, std::size_t n) {
  if (n < 3) throw InputError("a polyline needs at least 3 vertices");
  if (a == b) throw InputError("polyline endpoints coincide");
  Polyline p{family, {}};
  p.vertices.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(n - 1);
    p.vertices.push_back(k + 1 == n ? b : ChartPoint{a.u + t * (b.u - a.u), a.v + t * (b.v - a.v)});
  }
  return p;
}

Polyline polyline_from_curve(const SampledCurve& curve, std::size_t n) {
  if (n < 3) throw InputError("a polyline needs at least 3 vertices");
  if (curve.size() < 2 || curve.t.size() != curve.size())
    throw InputError("curve needs at least 2 samples with parameters");
  const std::size_t m = curve.size();
  std::vector<double> s(m, 0.0);
  for (std::size_t i = 1; i < m; ++i)
    s[i] = s[i - 1] + metric_segment_length(curve.family.kind, curve.states[i - 1].point(),
                                            curve.states[i].point());
  Polyline p{curve.family, {}};
  p.family.paper_c.reset();
  p.vertices.reserve(n);
  std::size_t seg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k + 1 == n) {
      p.vertices.push_back(curve.states.back().point());
      break;
    }
    const double target = s.back() * static_cast<double>(k) / static_cast<double>(n - 1);
    while (seg + 2 < m && s[seg + 1] < target) ++seg;
    const double len = s[seg + 1] - s[seg];
    const double w = len > 0.0 ? std::clamp((target - s[seg]) / len, 0.0, 1.0) : 0.0;
    // cubic Hermite in the chart arc length with the unit headings as slopes
    const CurveState& a = curve.states[seg];
    const CurveState& b = curve.states[seg + 1];
    const double dt = curve.t[seg + 1] - curve.t[seg];
    const double h00 = (1.0 + 2.0 * w) * (1.0 - w) * (1.0 - w), h10 = w * (1.0 - w) * (1.0 - w);
    const double h01 = w * w * (3.0 - 2.0 * w), h11 = w * w * (w - 1.0);
    p.vertices.push_back({h00 * a.u + h10 * dt * a.du() + h01 * b.u + h11 * dt * b.du(),
                          h00 * a.v + h10 * dt * a.dv() + h01 * b.v + h11 * dt * b.dv()});
  }
  return p;
}

Polyline refine(const Polyline& p) {
  Polyline out{p.family, {}};
  out.vertices.reserve(2 * p.size() - 1);
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k > 0) out.vertices.push_back(midpoint(p.vertices[k - 1], p.vertices[k]));
    out.vertices.push_back(p.vertices[k]);
  }
  return out;
}

double discrete_energy(const Polyline& p, const Guards& guards) {
  return weighted_energy(p.family, p.vertices, guards);
}

ChartGradient energy_gradient(const Polyline& p, const Guards& guards) {
  return weighted_gradient(p.family, p.vertices, guards);
}

double max_gradient_component(const ChartGradient& g) {
  double m = 0.0;
  for (std::size_t k = 1; k + 1 < g.size(); ++k)
    m = std::max({m, std::abs(g[k][0]), std::abs(g[k][1])});
  return m;
}

ConformalFactor conformal_factor(const FamilySpec& family, const Guards& guards) {
  if (is_spherical(family.kind))
    throw UnsupportedFamily("the sphere chart metric is not conformally flat");
  const bool half_plane = space_of(family.kind) == Space::HalfPlane;
  ConformalFactor phi;
  phi.value = [family, guards, half_plane](ChartPoint p) {
    const double w = weight_at(family, p, guards).value;
    return half_plane ? w / p.v : w;
  };
  phi.gradient = [family, guards, half_plane](ChartPoint p) -> std::array<double, 2> {
    const Weight w = weight_at(family, p, guards);
    if (!half_plane) return w.grad;
    return {w.grad[0] / p.v, w.grad[1] / p.v - w.value / (p.v * p.v)};
  };
  return phi;
}

Objective weighted_length_objective(const FamilySpec& family, const Guards& guards) {
  Objective o;
  o.energy = [family, guards](const Vertices& x) {
    require_vertices_admissible(family, x, guards);
    return weighted_energy(family, x, guards);
  };
  o.gradient = [family, guards](const Vertices& x) { return weighted_gradient(family, x, guards); };
  return o;
}

Objective conformal_length_objective(const ConformalFactor& phi) {
  Objective o;
  o.energy = [phi](const Vertices& x) {
    double e = 0.0;
    for (const ChartPoint& p : x) phi.value(p);  // admissibility of the vertices
    for (std::size_t k = 0; k + 1 < x.size(); ++k)
      e += phi.value(midpoint(x[k], x[k + 1])) * chart_distance(x[k], x[k + 1]);
    return e;
  };
  o.gradient = [phi](const Vertices& x) {
    ChartGradient g(x.size(), {0.0, 0.0});
    for (std::size_t k = 0; k + 1 < x.size(); ++k) {
      const ChartPoint m = midpoint(x[k], x[k + 1]);
      const double du = x[k + 1].u - x[k].u, dv = x[k + 1].v - x[k].v;
      const double len = std::hypot(du, dv);
      const double f = phi.value(m);
      const auto gf = phi.gradient(m);
      const std::array<double, 2> inc =
          len > 0.0 ? std::array<double, 2>{f * du / len, f * dv / len}
                    : std::array<double, 2>{0.0, 0.0};
      for (int i = 0; i < 2; ++i) {
        g[k][i] += 0.5 * gf[i] * len - inc[i];
        g[k + 1][i] += 0.5 * gf[i] * len + inc[i];
      }
    }
    g.front() = {0.0, 0.0};
    g.back() = {0.0, 0.0};
    return g;
  };
  return o;
}

void MinimizerConfig::validate() const {
  if (!(grad_tol > 0.0)) throw InputError("grad_tol must be positive");
  if (!(armijo > 0.0 && armijo < 1.0)) throw InputError("Armijo constant must lie in (0, 1)");
  if (!(initial_step > 0.0) || !(min_step > 0.0)) throw InputError("steps must be positive");
}

std::string_view to_string(MinimizerStop s) {
  switch (s) {
  case MinimizerStop::GradientTolerance: return "gradient-tolerance";
  case MinimizerStop::MaxIterations: return "max-iterations";
  case MinimizerStop::LineSearchStalled: return "line-search-stalled";
  }
  return "unknown";
}

MinimizeResult minimize(const Polyline& p0, const MinimizerConfig& cfg, const Guards& guards) {
  p0.validate(guards);
  return minimize(p0, weighted_length_objective(p0.family, guards), cfg);
}

MinimizeResult minimize(const Polyline& p0, const Objective& objective,
                        const MinimizerConfig& cfg) {
  cfg.validate();
  if (p0.size() < 3) throw InputError("a polyline needs at least 3 vertices");
  if (p0.vertices.front() == p0.vertices.back()) throw InputError("polyline endpoints coincide");

  MinimizeResult out;
  Vertices x = p0.vertices;
  double e = objective.energy(x);
  out.energy_trace.push_back(e);
  ChartGradient g = objective.gradient(x);
  double step = cfg.initial_step;
  Vertices trial(x.size()), scratch(x.size());
  const std::size_t n = x.size();

  ChartGradient d(n, {0.0, 0.0});
  auto descent = [&]() {
    for (std::size_t k = 1; k + 1 < n; ++k) {
      d[k] = g[k];
      if (!cfg.normal_only) continue;
      const double tu = x[k + 1].u - x[k - 1].u, tv = x[k + 1].v - x[k - 1].v;
      const double len = std::hypot(tu, tv);
      if (len == 0.0) continue;
      const double along = (g[k][0] * tu + g[k][1] * tv) / (len * len);
      d[k] = {g[k][0] - along * tu, g[k][1] - along * tv};
    }
  };

  out.stop = MinimizerStop::MaxIterations;
  for (;;) {
    descent();
    out.descent_max = max_gradient_component(d);
    if (out.descent_max <= cfg.grad_tol) {
      out.stop = MinimizerStop::GradientTolerance;
      break;
    }
    if (out.iterations >= cfg.max_iters) break;
    // g . d = |d|^2 for the orthogonal projection as well
    double gg = 0.0;
    for (std::size_t k = 1; k + 1 < n; ++k) gg += d[k][0] * d[k][0] + d[k][1] * d[k][1];

    double t = cfg.reuse_step ? std::min(cfg.initial_step, 2.0 * step) : cfg.initial_step;
    auto energy_at = [&](double tt, Vertices& dst) {
      dst.front() = x.front();
      dst.back() = x.back();
      for (std::size_t k = 1; k + 1 < n; ++k)
        dst[k] = {x[k].u - tt * d[k][0], x[k].v - tt * d[k][1]};
      try {
        const double v = objective.energy(dst);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
      } catch (const DomainError&) {
        return std::numeric_limits<double>::infinity();
      }
    };
    auto armijo_ok = [&](double tt, double et) { return et <= e - cfg.armijo * tt * gg; };

    double e_trial = energy_at(t, trial);
    bool first_try = true;
    while (!armijo_ok(t, e_trial)) {
      first_try = false;
      t *= 0.5;
      if (t < cfg.min_step) break;
      e_trial = energy_at(t, trial);
    }
    if (t < cfg.min_step) {
      out.stop = MinimizerStop::LineSearchStalled;
      break;
    }
    // Move along the power-of-two grid while the energy keeps dropping, so
    // the step tracks the minimizer along the ray instead of the largest
    // step Armijo tolerates.
    if (first_try) {
      while (2.0 * t <= cfg.initial_step) {
        const double e2 = energy_at(2.0 * t, scratch);
        if (!(e2 < e_trial)) break;
        t *= 2.0;
        e_trial = e2;
        trial.swap(scratch);
      }
    }
    while (0.5 * t >= cfg.min_step) {
      const double eh = energy_at(0.5 * t, scratch);
      if (!(eh < e_trial)) break;
      t *= 0.5;
      e_trial = eh;
      trial.swap(scratch);
    }
    step = t;
    x.swap(trial);
    e = e_trial;
    out.energy_trace.push_back(e);
    g = objective.gradient(x);
    ++out.iterations;
  }
  out.converged = out.stop == MinimizerStop::GradientTolerance;
  out.grad_max = max_gradient_component(g);
  out.polyline = Polyline{p0.family, std::move(x)};
  return out;
}

MinimizeResult minimize_from_chord(const FamilySpec& family, ChartPoint a, ChartPoint b,
                                   std::size_t n, const MinimizerConfig& cfg,
                                   const Guards& guards) {
  if (n < 3) throw InputError("a polyline needs at least 3 vertices");
  std::size_t coarse = n;
  int levels = 0;
  while ((coarse - 1) % 2 == 0 && (coarse - 1) / 2 + 1 >= 17) {
    coarse = (coarse - 1) / 2 + 1;
    ++levels;
  }
  Polyline p = chord_polyline(family, a, b, coarse);
  p.validate(guards);
  const Objective objective = weighted_length_objective(family, guards);
  MinimizeResult r = minimize(p, objective, cfg);
  for (int l = 0; l < levels; ++l) r = minimize(refine(r.polyline), objective, cfg);
  return r;
}

double compare_to_ode(const Polyline& p, const SampledCurve& curve) {
  if (curve.empty()) throw InputError("empty reference curve");
  double worst = 0.0;
  for (const ChartPoint& q : p.vertices) {
    double best = chart_distance(q, curve.states.front().point());
    for (std::size_t i = 0; i + 1 < curve.size(); ++i)
      best = std::min(best, point_segment_distance(q, curve.states[i].point(),
                                                   curve.states[i + 1].point()));
    worst = std::max(worst, best);
  }
  return worst;
}

std::optional<std::pair<double, double>> shooting_miss(const FamilySpec& family, ChartPoint a,
                                                       ChartPoint b, double theta0,
                                                       const ShootingConfig& cfg) {
  const double chord = chart_distance(a, b);
  const double eu = (b.u - a.u) / chord, ev = (b.v - a.v) / chord;
  auto along = [&](const CurveState& s) { return (s.u - a.u) * eu + (s.v - a.v) * ev; };
  auto offset = [&](const CurveState& s) { return -(s.u - b.u) * ev + (s.v - b.v) * eu; };
  auto step = [&](const CurveState& s, double h) -> std::optional<CurveState> {
    try {
      const CurveState next = rk4_step(family, s, h, cfg.guards);
      if (!std::isfinite(next.u) || !std::isfinite(next.v) || !std::isfinite(next.theta))
        return std::nullopt;
      if (check_admissible(family.kind, next.point(), cfg.guards) != Admissibility::Ok)
        return std::nullopt;
      return next;
    } catch (const DomainError&) {
      return std::nullopt;
    } catch (const DegenerateError&) {
      return std::nullopt;
    }
  };

  CurveState s{a.u, a.v, theta0};
  const auto steps = static_cast<std::size_t>(std::floor(cfg.max_length / cfg.h + 1e-9));
  for (std::size_t i = 0; i < steps; ++i) {
    const auto next = step(s, cfg.h);
    if (!next) return std::nullopt;
    if (along(*next) >= chord) {
      // land on the section with a partial step
      double lo = 0.0, hi = cfg.h;
      CurveState hit = *next;
      for (int it = 0; it < 100 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const auto trial = step(s, mid);
        if (!trial) return std::nullopt;
        if (along(*trial) >= chord) {
          hi = mid;
          hit = *trial;
        } else {
          lo = mid;
        }
      }
      return std::make_pair(offset(hit), static_cast<double>(i) * cfg.h + hi);
    }
    s = *next;
  }
  return std::nullopt;
}

ShootingResult shoot(const FamilySpec& family, ChartPoint a, ChartPoint b,
                     const ShootingConfig& cfg) {
  family.validate();
  if (a == b) throw InputError("shooting endpoints coincide");
  if (!(cfg.h > 0.0) || !(cfg.max_length > 0.0) || !(cfg.tol > 0.0))
    throw InputError("shooting step, budget and tolerance must be positive");
  for (ChartPoint p : {a, b})
    if (check_admissible(family.kind, p, cfg.guards, 2.0) != Admissibility::Ok)
      throw InputError("shooting endpoint is not admissible");

  auto miss = [&](double theta) { return shooting_miss(family, a, b, theta, cfg); };
  const double chord_dir = std::atan2(b.v - a.v, b.u - a.u);

  double lo = 0.0, hi = 0.0;
  std::optional<std::pair<double, double>> m_lo, m_hi;
  if (cfg.bracket) {
    lo = cfg.bracket->first;
    hi = cfg.bracket->second;
    m_lo = miss(lo);
    m_hi = miss(hi);
    if (!m_lo || !m_hi || (m_lo->first > 0.0) == (m_hi->first > 0.0))
      throw NonConvergence("shooting bracket does not enclose a sign change of the miss");
  } else {
    const std::size_t n = std::max<std::size_t>(cfg.scan, 4);
    const double margin = 1e-3;
    const double span = std::numbers::pi - 2.0 * margin;
    std::vector<double> th(n);
    std::vector<std::optional<std::pair<double, double>>> ms(n);
    for (std::size_t j = 0; j < n; ++j) {
      th[j] = chord_dir - 0.5 * span + span * static_cast<double>(j) / static_cast<double>(n - 1);
      ms[j] = miss(th[j]);
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j + 1 < n; ++j) {
      if (!ms[j] || !ms[j + 1]) continue;
      if ((ms[j]->first > 0.0) == (ms[j + 1]->first > 0.0)) continue;
      const double dist = std::abs(0.5 * (th[j] + th[j + 1]) - chord_dir);
      if (dist < best) {
        best = dist;
        lo = th[j];
        hi = th[j + 1];
        m_lo = ms[j];
        m_hi = ms[j + 1];
      }
    }
    if (!m_lo) throw NonConvergence("no initial heading brackets the target endpoint");
  }

  double theta = lo;
  auto m = m_lo;
  if (std::abs(m_hi->first) < std::abs(m_lo->first)) {
    theta = hi;
    m = m_hi;
  }
  const bool lo_positive = m_lo->first > 0.0;
  for (int it = 0; it < 200 && std::abs(m->first) > cfg.tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const auto mm = miss(mid);
    if (!mm) throw NonConvergence("shooting trial left the admissible region inside the bracket");
    if ((mm->first > 0.0) == lo_positive) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (std::abs(mm->first) <= std::abs(m->first)) {
      theta = mid;
      m = mm;
    }
  }
  if (std::abs(m->first) > cfg.tol)
    throw NonConvergence("shooting miss stayed above the tolerance");

  ShootingResult out;
  out.theta0 = theta;
  out.length = m->second;
  out.miss = m->first;
  IntegratorConfig icfg;
  const double segments = std::ceil(out.length / cfg.h);
  icfg.h = out.length / segments;
  icfg.max_length = out.length;
  icfg.eps_d = cfg.guards.eps_d;
  icfg.eps_pole = cfg.guards.eps_pole;
  out.curve = integrate(family, {a.u, a.v, theta}, icfg);
  return out;
}

} // namespace catforms
