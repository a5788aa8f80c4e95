#include <gtest/gtest.h>

#include <cmath>

#include "catforms/errors.hpp"
#include "catforms/integrator.hpp"
#include "catforms/variational.hpp"
#include "support/support.hpp"

using namespace catforms;
using catforms::testing::Gen;
using catforms::testing::kAllFamilies;
using catforms::testing::kPi;

namespace {

Polyline line(const FamilySpec& f, std::vector<ChartPoint> pts) { return {f, std::move(pts)}; }

// Random chain: a chord between two safe points with transverse jitter.
Polyline random_polyline(Gen& g, Family f, std::size_t n) {
  const ChartPoint a = g.point(f);
  ChartPoint b = g.point(f);
  b = {a.u + 0.3 * (b.u - a.u), a.v + 0.3 * (b.v - a.v)};
  Polyline p = chord_polyline({f, g.alpha(), {}}, a, b, n);
  const double len = std::hypot(b.u - a.u, b.v - a.v);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    p.vertices[k].u += g.uniform(-0.1, 0.1) * len;
    p.vertices[k].v += g.uniform(-0.1, 0.1) * len;
  }
  return p;
}

// The flow's cosh solution over u in [-1.2, 1.2], as one sample chain.
SampledCurve cosh_curve() {
  const FamilySpec f{Family::Euclidean, 1.0, {}};
  IntegratorConfig ic;
  ic.max_length = 1.2;
  const SampledCurve right = integrate(f, {0.0, 1.0, 0.0}, ic);
  const SampledCurve left = integrate(f, {0.0, 1.0, kPi}, ic);
  SampledCurve both = right;
  both.states.clear();
  for (std::size_t i = left.size(); i-- > 1;) both.states.push_back(left.states[i]);
  for (const CurveState& s : right.states) both.states.push_back(s);
  return both;
}

MinimizerConfig fast_config(double tol) {
  MinimizerConfig cfg;
  cfg.grad_tol = tol;
  cfg.max_iters = 100000;
  return cfg;
}

} // namespace

TEST(DiscreteEnergy, Examples) {
  const FamilySpec e1{Family::Euclidean, 1.0, {}};
  EXPECT_DOUBLE_EQ(discrete_energy(line(e1, {{0, 1}, {0.5, 1}, {1, 1}})), 1.0);
  const FamilySpec e0{Family::Euclidean, 0.0, {}};
  EXPECT_NEAR(discrete_energy(line(e0, {{0, 1}, {3, 5}, {3, 7}})), 7.0, 1e-14);
  EXPECT_NEAR(discrete_energy(line(e0, {{0, 10}, {3, 14}, {3, 16}})), 7.0, 1e-14);
}

TEST(DiscreteEnergy, HorocycleVerticalSegment) {
  const FamilySpec f{Family::Horocycle, 1.0, {}};
  Polyline p{f, {}};
  for (int k = 0; k <= 100; ++k) {
    const double y = std::exp(1.0) + (std::exp(2.0) - std::exp(1.0)) * k / 100.0;
    p.vertices.push_back({0.0, y});
  }
  EXPECT_NEAR(discrete_energy(p), 1.5, 1e-3);
}

TEST(DiscreteEnergy, SphereMeridianAndHalfPlaneHorizontal) {
  EXPECT_NEAR(discrete_energy(line({Family::Sphere, 1.0, {}}, {{0.2, 0}, {0.3, 0}, {0.4, 0}})), 0.06,
              1e-15);
  EXPECT_NEAR(discrete_energy(line({Family::HypGeodesic, 0.0, {}}, {{1, 2}, {1.5, 2}, {2, 2}})), 0.5,
              1e-15);
}

TEST(DiscreteEnergy, InadmissibleMidpointThrows) {
  EXPECT_THROW(discrete_energy(line({Family::Euclidean, 1.0, {}}, {{0, 1}, {1, -1}, {2, 1}})),
               DomainError);
}

TEST(EnergyGradient, MatchesCentralDifferencesProperty) {
  Gen g(30);
  const double delta = 1e-7;
  for (Family f : kAllFamilies) {
    for (int trial = 0; trial < 100; ++trial) {
      const Polyline p = random_polyline(g, f, 7);
      const ChartGradient grad = energy_gradient(p);
      EXPECT_EQ(grad.front()[0], 0.0);
      EXPECT_EQ(grad.back()[1], 0.0);
      const double scale = std::max(max_gradient_component(grad), 1e-3);
      for (std::size_t k = 1; k + 1 < p.size(); ++k) {
        for (int c = 0; c < 2; ++c) {
          Polyline plus = p, minus = p;
          (c == 0 ? plus.vertices[k].u : plus.vertices[k].v) += delta;
          (c == 0 ? minus.vertices[k].u : minus.vertices[k].v) -= delta;
          const double fd = (discrete_energy(plus) - discrete_energy(minus)) / (2 * delta);
          ASSERT_LT(std::abs(fd - grad[k][c]) / scale, 1e-6)
              << to_string(f) << " trial " << trial << " vertex " << k;
        }
      }
    }
  }
}

TEST(EnergyGradient, VerticalHyperbolicGeodesicIsCritical) {
  for (Family f : {Family::HypGeodesic, Family::HypHorodist}) {
    Polyline p{{f, 0.0, {}}, {}};
    for (int k = 0; k <= 20; ++k) p.vertices.push_back({1.0, std::pow(1.1, k)});
    EXPECT_LT(max_gradient_component(energy_gradient(p)), 1e-12);
  }
}

TEST(EnergyGradient, ResampledFlowSolutionGradientDecaysAtLeastQuadratically) {
  const FamilySpec f{Family::Euclidean, 1.0, {}};
  IntegratorConfig ic;
  ic.max_length = 3.0;
  const SampledCurve c = integrate(f, {-1.0, std::cosh(1.0), std::atan(-std::sinh(1.0))}, ic);
  double prev = max_gradient_component(energy_gradient(polyline_from_curve(c, 25)));
  for (std::size_t n : {49u, 97u, 193u}) {
    const double g = max_gradient_component(energy_gradient(polyline_from_curve(c, n)));
    EXPECT_GT(prev / g, 4.0) << n;
    prev = g;
  }
}

TEST(Minimize, EuclideanCatenaryFromTheChord) {
  const FamilySpec f{Family::Euclidean, 1.0, {}};
  const double ch = std::cosh(1.0);
  const MinimizeResult r = minimize_from_chord(f, {-1, ch}, {1, ch}, 101, fast_config(1e-8));
  ASSERT_EQ(r.polyline.size(), 101u);
  EXPECT_EQ(r.polyline.vertices.front(), (ChartPoint{-1, ch}));
  EXPECT_EQ(r.polyline.vertices.back(), (ChartPoint{1, ch}));
  double worst = 0.0;
  for (const ChartPoint& v : r.polyline.vertices) worst = std::max(worst, std::abs(v.v - std::cosh(v.u)));
  EXPECT_LT(worst, 5e-3);

  EXPECT_LT(compare_to_ode(r.polyline, cosh_curve()), 5e-3);
}

TEST(Minimize, HyperbolicGeodesicThroughTwoPoints) {
  // The geodesic through (1,1) and (2,2) is the circle (x-3)^2 + y^2 = 5.
  const FamilySpec f{Family::HypGeodesic, 0.0, {}};
  const MinimizeResult r = minimize_from_chord(f, {1, 1}, {2, 2}, 101, fast_config(1e-9));
  for (const ChartPoint& v : r.polyline.vertices)
    EXPECT_LT(std::abs((v.u - 3) * (v.u - 3) + v.v * v.v - 5.0), 1e-4);
}

TEST(Minimize, EnergyTraceIsMonotone) {
  const FamilySpec f{Family::HypHorodist, 1.0, {}};
  const Polyline p0 = chord_polyline(f, {1, 1}, {1.3, 1.5}, 21);
  const MinimizeResult r = minimize(p0, fast_config(1e-9));
  ASSERT_GE(r.energy_trace.size(), 2u);
  EXPECT_EQ(r.energy_trace.front(), discrete_energy(p0));
  for (std::size_t i = 1; i < r.energy_trace.size(); ++i)
    EXPECT_LE(r.energy_trace[i], r.energy_trace[i - 1]);
  EXPECT_LE(discrete_energy(r.polyline), discrete_energy(p0));
  EXPECT_EQ(r.polyline.vertices.front(), p0.vertices.front());
  EXPECT_EQ(r.polyline.vertices.back(), p0.vertices.back());
}

TEST(Minimize, NonConvergenceIsReportedNotThrown) {
  const FamilySpec f{Family::Euclidean, 1.0, {}};
  MinimizerConfig cfg;
  cfg.max_iters = 3;
  const MinimizeResult r = minimize(chord_polyline(f, {-1, 2}, {1, 2}, 11), cfg);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.stop, MinimizerStop::MaxIterations);
  EXPECT_EQ(r.iterations, 3u);
}

TEST(Minimize, RejectsDegenerateInput) {
  const FamilySpec f{Family::Euclidean, 1.0, {}};
  EXPECT_THROW(minimize_from_chord(f, {0, 1}, {0, 1}, 11, {}), InputError);
  EXPECT_THROW(minimize(line(f, {{0, 1}, {1, 1}}), MinimizerConfig{}), InputError);
  EXPECT_THROW(minimize(line(f, {{0, 1}, {1, -1}, {2, 1}}), MinimizerConfig{}), DomainError);
  MinimizerConfig bad;
  bad.grad_tol = 0.0;
  EXPECT_THROW(minimize(chord_polyline(f, {0, 1}, {1, 1}, 5), bad), InputError);
}

TEST(Minimize, AgreesWithTheConformalGeodesicProblem) {
  const FamilySpec f{Family::HypHorodist, 1.0, {}};
  const Polyline p0 = chord_polyline(f, {1, 1}, {1.3, 1.5}, 17);
  const MinimizerConfig cfg = fast_config(1e-11);
  const MinimizeResult weighted = minimize(p0, cfg);
  const MinimizeResult conformal = minimize(p0, conformal_length_objective(conformal_factor(f)), cfg);
  for (std::size_t k = 0; k < p0.size(); ++k)
    EXPECT_LT(catforms::testing::chart_distance(weighted.polyline.vertices[k],
                                                conformal.polyline.vertices[k]),
              1e-6);
}

TEST(ConformalFactor, SphericalFamiliesHaveNone) {
  EXPECT_THROW(conformal_factor({Family::Sphere, 1.0, {}}), UnsupportedFamily);
  EXPECT_THROW(conformal_factor({Family::SphereExtrinsic, 1.0, {}}), UnsupportedFamily);
}

TEST(ConformalFactor, GradientMatchesDifferences) {
  Gen g(31);
  for (Family f : {Family::Euclidean, Family::HypGeodesic, Family::HypHorodist, Family::Horocycle}) {
    const ConformalFactor phi = conformal_factor({f, g.alpha(), {}});
    for (int k = 0; k < 50; ++k) {
      const ChartPoint p = g.point(f);
      const auto grad = phi.gradient(p);
      const double h = 1e-6;
      const double du = (phi.value({p.u + h, p.v}) - phi.value({p.u - h, p.v})) / (2 * h);
      const double dv = (phi.value({p.u, p.v + h}) - phi.value({p.u, p.v - h})) / (2 * h);
      EXPECT_NEAR(du, grad[0], 1e-6 * std::max(1.0, std::abs(grad[0])));
      EXPECT_NEAR(dv, grad[1], 1e-6 * std::max(1.0, std::abs(grad[1])));
    }
  }
}

TEST(CompareToOde, IdenticalCurveIsZero) {
  const FamilySpec f{Family::Sphere, 1.0, {}};
  IntegratorConfig ic;
  ic.h = 1e-2;
  ic.max_length = 1.0;
  const SampledCurve c = integrate(f, {0.5, 0.0, 0.4}, ic);
  Polyline p{f, {}};
  for (const CurveState& s : c.states) p.vertices.push_back(s.point());
  EXPECT_EQ(compare_to_ode(p, c), 0.0);
}

TEST(CompareToOde, DeviationShrinksFourfoldWhenNodesDouble) {
  const FamilySpec f{Family::Euclidean, 1.0, {}};
  const double ch = std::cosh(1.0);
  const SampledCurve both = cosh_curve();
  const double d25 =
      compare_to_ode(minimize_from_chord(f, {-1, ch}, {1, ch}, 25, fast_config(1e-9)).polyline, both);
  const double d50 =
      compare_to_ode(minimize_from_chord(f, {-1, ch}, {1, ch}, 50, fast_config(1e-9)).polyline, both);
  EXPECT_GT(d25 / d50, 3.0);
  EXPECT_LT(d25 / d50, 5.0);
}

TEST(Shooting, HitsTheTargetAndMatchesTheMinimizer) {
  const FamilySpec f{Family::Sphere, 1.0, {}};
  const ShootingResult s = shoot(f, {0.5, 0.0}, {0.6, 0.5});
  EXPECT_LE(std::abs(s.miss), 1e-10);
  const CurveState end = s.curve.states.back();
  EXPECT_LT(catforms::testing::chart_distance(end.point(), {0.6, 0.5}), 1e-8);
  const auto again = shooting_miss(f, {0.5, 0.0}, {0.6, 0.5}, s.theta0, ShootingConfig{});
  ASSERT_TRUE(again.has_value());
  EXPECT_LE(std::abs(again->first), 1e-10);
}

TEST(Shooting, ReportsMissingSolutions) {
  EXPECT_THROW(shoot({Family::Euclidean, 2.0, {}}, {-0.5, 1}, {0.5, 1}), NonConvergence);
  EXPECT_THROW(shoot({Family::Euclidean, 1.0, {}}, {0.5, 1}, {0.5, 1}), InputError);
}
