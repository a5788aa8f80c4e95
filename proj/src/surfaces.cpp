#include "catforms/surfaces.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "catforms/curvature.hpp"
#include "catforms/errors.hpp"

namespace catforms {

namespace {

using Vec4 = std::array<double, 4>;

Vec4 to_array(const AmbientVec& a) { return {a[0], a[1], a[2], a[3]}; }

double dot4(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

double det3(double a, double b, double c, double d, double e, double f, double g, double h,
            double i) {
  return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

// X with <X, d> = det[a; b; c; d] for every d in R^4.
Vec4 cross4(const Vec4& a, const Vec4& b, const Vec4& c) {
  auto minor = [&](int skip) {
    int k[3], n = 0;
    for (int j = 0; j < 4; ++j)
      if (j != skip) k[n++] = j;
    return det3(a[k[0]], a[k[1]], a[k[2]], b[k[0]], b[k[1]], b[k[2]], c[k[0]], c[k[1]], c[k[2]]);
  };
  return {-minor(0), minor(1), -minor(2), minor(3)};
}

Vec4 cross3(const Vec4& a, const Vec4& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0], 0.0};
}

Vec4 scale(const Vec4& a, double s) { return {a[0] * s, a[1] * s, a[2] * s, a[3] * s}; }

AmbientVec to_ambient(RevolutionSpace space, const Vec4& a) {
  return space == RevolutionSpace::S3 ? AmbientVec::r4(a[0], a[1], a[2], a[3])
                                      : AmbientVec::r3(a[0], a[1], a[2]);
}

// Index i with x[i] <= t < x[i+1] for increasing x, or the mirrored
// condition for decreasing x, clamped to [0, n - 2].
std::size_t bracket_index(const std::vector<double>& x, double t) {
  const std::size_t n = x.size();
  const bool increasing = x.back() >= x.front();
  std::size_t lo = 0, hi = n - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if ((x[mid] <= t) == increasing) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

double hermite(double w, double dt, double a, double da, double b, double db) {
  const double h00 = (1.0 + 2.0 * w) * (1.0 - w) * (1.0 - w), h10 = w * (1.0 - w) * (1.0 - w);
  const double h01 = w * w * (3.0 - 2.0 * w), h11 = w * w * (w - 1.0);
  return h00 * a + h10 * dt * da + h01 * b + h11 * dt * db;
}

void require_graph_over_v(const SampledCurve& curve) {
  if (curve.size() < 2) throw ResampleError("generating curve needs at least two samples");
  const double first = std::sin(curve.states.front().theta);
  for (const CurveState& s : curve.states) {
    const double sv = std::sin(s.theta);
    if (!(std::abs(sv) > 1e-12) || (sv > 0.0) != (first > 0.0))
      throw ResampleError("curve is not a graph over the longitude v");
  }
  for (std::size_t i = 1; i < curve.size(); ++i) {
    const double dv = curve.states[i].v - curve.states[i - 1].v;
    if (!((dv > 0.0) == (first > 0.0)) || dv == 0.0)
      throw ResampleError("longitude is not strictly monotone along the curve");
  }
}

void require_space_matches(const SampledCurve& curve, RevolutionSpace space) {
  if (space == RevolutionSpace::S3 && !is_spherical(curve.family.kind))
    throw InputError("S^3 revolutions need a spherical family");
  if (space == RevolutionSpace::H3 && !is_hyperbolic(curve.family.kind))
    throw InputError("H^3 revolutions need a half-plane family");
}

} // namespace

std::string_view to_string(RevolutionSpace s) { return s == RevolutionSpace::S3 ? "s3" : "h3"; }

RevolutionSpace parse_revolution_space(std::string_view s) {
  if (s == "s3") return RevolutionSpace::S3;
  if (s == "h3") return RevolutionSpace::H3;
  throw InputError("unknown space '" + std::string(s) + "' (expected s3 or h3)");
}

double mean_curvature(const FundamentalForms& f) {
  const double det = f.E * f.G - f.F * f.F;
  if (!(det > 0.0)) throw DegenerateError("first fundamental form is degenerate");
  return (f.E * f.h22 - 2.0 * f.F * f.h12 + f.G * f.h11) / (2.0 * det);
}

double s3_mean_curvature(double u, double du, double ddu) {
  const double su = std::sin(u), cu = std::cos(u);
  if (su == 0.0) throw DegenerateError("revolution touches the rotation axis (sin u = 0)");
  const double q = du * du + cu * cu;
  const double num =
      cu * (cu + std::cos(3.0 * u)) + (3.0 * std::cos(2.0 * u) - 1.0) * du * du - 2.0 * ddu * su * cu;
  return num / (2.0 * su * std::pow(q, 1.5));
}

double s3_mean_curvature_from_geodesic_curvature(double u, double du, double ddu) {
  const double su = std::sin(u), cu = std::cos(u);
  if (su == 0.0) throw DegenerateError("revolution touches the rotation axis (sin u = 0)");
  const double speed = std::sqrt(du * du + cu * cu);
  // graph v = t: v' = 1, v'' = 0
  const double ks = sphere_geodesic_curvature(u, du, 1.0, ddu, 0.0);
  return (cu * cu - su * speed * ks) / (su * speed);
}

double h3_mean_curvature(double u, double v, double du, double dv, double kappa_e) {
  if (u == 0.0) throw DegenerateError("revolution touches the rotation axis (u = 0)");
  const double m = du * du + dv * dv;
  if (!(m > 0.0)) throw DegenerateError("stationary generating curve");
  const double sm = std::sqrt(m);
  return 0.5 * (v * kappa_e + v * dv / (u * sm) + 2.0 * du / sm);
}

AmbientVec RevolutionPatch::point(double t, double s) const {
  const ChartPoint p = generator(t);
  if (space == RevolutionSpace::S3) {
    const double cu = std::cos(p.u), su = std::sin(p.u);
    return AmbientVec::r4(cu * std::cos(t), cu * std::sin(t), su * std::cos(s), su * std::sin(s));
  }
  return AmbientVec::r3(p.u * std::cos(s), p.u * std::sin(s), p.v);
}

RevolutionPatch latitude_patch(double u0, std::size_t samples, std::size_t angular) {
  if (samples < 1 || angular < 1) throw InputError("patch needs at least one interval per direction");
  if (!(std::sin(u0) > 0.0) || !(u0 < std::numbers::pi / 2))
    throw InputError("latitude must lie in (0, pi/2)");
  RevolutionPatch p;
  p.space = RevolutionSpace::S3;
  p.generator = [u0](double t) { return ChartPoint{u0, t}; };
  p.angular = angular;
  for (std::size_t k = 0; k <= samples; ++k)
    p.ts.push_back(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples));
  return p;
}

RevolutionPatch patch_from_curve(const SampledCurve& curve, RevolutionSpace space,
                                 std::size_t angular) {
  require_space_matches(curve, space);
  if (curve.size() < 2) throw InputError("generating curve needs at least two samples");
  if (angular < 1) throw InputError("patch needs at least one angular interval");
  RevolutionPatch p;
  p.space = space;
  p.angular = angular;
  const FamilySpec family = curve.family;
  const std::vector<CurveState> states = curve.states;
  const bool flow = curve.h > 0.0;

  if (space == RevolutionSpace::H3) {
    const std::vector<double> ts = curve.t;
    p.ts = ts;
    p.generator = [family, states, ts, flow](double t) {
      const std::size_t i = bracket_index(ts, t);
      if (flow) return rk4_step(family, states[i], t - ts[i]).point();
      const double dt = ts[i + 1] - ts[i];
      const double w = (t - ts[i]) / dt;
      const CurveState& a = states[i];
      const CurveState& b = states[i + 1];
      return ChartPoint{hermite(w, dt, a.u, a.du(), b.u, b.du()),
                        hermite(w, dt, a.v, a.dv(), b.v, b.dv())};
    };
    return p;
  }

  require_graph_over_v(curve);
  std::vector<double> vs(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) vs[i] = states[i].v;
  p.ts = vs;
  p.generator = [family, states, vs, flow](double t) {
    const std::size_t i = bracket_index(vs, t);
    const CurveState& a = states[i];
    if (!flow) {
      const CurveState& b = states[i + 1];
      const double dv = b.v - a.v;
      const double u = hermite((t - a.v) / dv, dv, a.u, a.du() / a.dv(), b.u, b.du() / b.dv());
      return ChartPoint{u, t};
    }
    // arc length tau from sample i at which the longitude equals t
    double tau = (t - a.v) / a.dv();
    CurveState s = a;
    for (int it = 0; it < 20; ++it) {
      s = rk4_step(family, a, tau);
      const double f = s.v - t;
      if (std::abs(f) <= 1e-15 * std::max(1.0, std::abs(t))) break;
      tau -= f / s.dv();
    }
    return ChartPoint{s.u, t};
  };
  return p;
}

SurfaceSample numeric_fundamental_forms(const RevolutionPatch& patch, double t, double s,
                                        double delta) {
  if (!(delta > 0.0)) throw InputError("finite-difference step must be positive");
  auto phi = [&](double tt, double ss) { return to_array(patch.point(tt, ss)); };
  // fourth-order five-point stencils; the mixed term is the product stencil
  constexpr double w1[5] = {1.0, -8.0, 0.0, 8.0, -1.0};
  constexpr double w2[5] = {-1.0, 16.0, -30.0, 16.0, -1.0};
  std::array<std::array<Vec4, 5>, 5> g{};
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      if (a == 2 || b == 2 || w1[a] * w1[b] != 0.0)
        g[a][b] = phi(t + (a - 2) * delta, s + (b - 2) * delta);
  const Vec4 p = g[2][2];

  const double d2 = delta * delta;
  Vec4 ft{}, fs{}, ftt{}, fss{}, fts{};
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 5; ++k) {
      ft[i] += w1[k] * g[k][2][i];
      fs[i] += w1[k] * g[2][k][i];
      ftt[i] += w2[k] * g[k][2][i];
      fss[i] += w2[k] * g[2][k][i];
      for (int l = 0; l < 5; ++l) fts[i] += w1[k] * w1[l] * g[k][l][i];
    }
    ft[i] /= 12.0 * delta;
    fs[i] /= 12.0 * delta;
    ftt[i] /= 12.0 * d2;
    fss[i] /= 12.0 * d2;
    fts[i] /= 144.0 * d2;
  }

  const auto amb = [&](const Vec4& a) { return to_ambient(patch.space, a); };
  const SurfaceSample out =
      surface_sample(patch.space, amb(p), amb(ft), amb(fs), amb(ftt), amb(fts), amb(fss));
  if (!(out.forms.E * out.forms.G - out.forms.F * out.forms.F > d2))
    throw DegenerateError("patch is degenerate at this point");
  return out;
}

SurfaceSample surface_sample(RevolutionSpace space, const AmbientVec& point,
                             const AmbientVec& dt, const AmbientVec& ds, const AmbientVec& dtt,
                             const AmbientVec& dts, const AmbientVec& dss) {
  const Ambient tag = space == RevolutionSpace::S3 ? Ambient::R4 : Ambient::R3;
  for (const AmbientVec* a : {&point, &dt, &ds, &dtt, &dts, &dss})
    if (a->tag() != tag) throw InputError("vector does not live in the ambient space");
  const Vec4 p = to_array(point), ft = to_array(dt), fs = to_array(ds);
  SurfaceSample out;
  FundamentalForms& f = out.forms;
  f.E = dot4(ft, ft);
  f.F = dot4(ft, fs);
  f.G = dot4(fs, fs);
  if (!(f.E * f.G - f.F * f.F > 0.0)) throw DegenerateError("patch is degenerate at this point");

  Vec4 n = space == RevolutionSpace::S3 ? cross4(p, ft, fs) : cross3(ft, fs);
  const double nn = std::sqrt(dot4(n, n));
  if (!(nn > 0.0)) throw DegenerateError("normal vanishes");
  n = scale(n, 1.0 / nn);
  f.h11 = dot4(n, to_array(dtt));
  f.h12 = dot4(n, to_array(dts));
  f.h22 = dot4(n, to_array(dss));
  out.point = to_ambient(space, p);
  out.normal = to_ambient(space, n);
  const double h = mean_curvature(f);
  out.mean_curvature = space == RevolutionSpace::S3 ? 2.0 * h : p[2] * h + n[2];
  return out;
}

MinimalityReport minimality_report(const SampledCurve& curve, RevolutionSpace space) {
  require_space_matches(curve, space);
  if (curve.empty()) throw InputError("empty generating curve");
  if (space == RevolutionSpace::S3) require_graph_over_v(curve);
  MinimalityReport r;
  r.t.reserve(curve.size());
  r.H.reserve(curve.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const CurveState& s = curve.states[i];
    const double dtheta = flow_rhs(curve.family, s);
    double h = 0.0;
    if (space == RevolutionSpace::S3) {
      const double sv = std::sin(s.theta), cv = std::cos(s.theta);
      h = s3_mean_curvature(s.u, cv / sv, -dtheta / (sv * sv * sv));
      r.t.push_back(s.v);
    } else {
      h = h3_mean_curvature(s.u, s.v, s.du(), s.dv(), dtheta);
      r.t.push_back(i < curve.t.size() ? curve.t[i] : static_cast<double>(i));
    }
    r.H.push_back(h);
    r.max_abs = std::max(r.max_abs, std::abs(h));
    sum += std::abs(h);
  }
  r.mean_abs = sum / static_cast<double>(curve.size());
  return r;
}

} // namespace catforms
