#include <gtest/gtest.h>

#include <cmath>

#include "catforms/errors.hpp"
#include "catforms/integrator.hpp"
#include "catforms/surfaces.hpp"
#include "support/support.hpp"

using namespace catforms;
using catforms::testing::Gen;
using catforms::testing::kPi;

namespace {

SampledCurve run(const FamilySpec& f, CurveState init, double length) {
  IntegratorConfig cfg;
  cfg.h = 1e-3;
  cfg.max_length = length;
  return integrate(f, init, cfg);
}

} // namespace

TEST(S3MeanCurvature, ParallelCircles) {
  EXPECT_NEAR(s3_mean_curvature(kPi / 6, 0.0, 0.0), 2.0 / std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(s3_mean_curvature(kPi / 4, 0.0, 0.0), 0.0, 1e-12);
  Gen g(40);
  for (int k = 0; k < 100; ++k) {
    const double u = g.uniform(0.05, 1.5);
    EXPECT_NEAR(s3_mean_curvature(u, 0.0, 0.0), 2.0 / std::tan(2.0 * u), 1e-10 / std::sin(2 * u));
  }
}

TEST(S3MeanCurvature, DegenerateAtTheAxis) {
  EXPECT_THROW(s3_mean_curvature(0.0, 0.3, 0.1), DegenerateError);
}

TEST(S3MeanCurvature, GeodesicCurvatureFormIsIdenticalProperty) {
  Gen g(41);
  for (int k = 0; k < 10000; ++k) {
    const double u = g.uniform(0.05, 1.5);
    const double du = g.uniform(-3.0, 3.0);
    const double ddu = g.uniform(-10.0, 10.0);
    const double a = s3_mean_curvature(u, du, ddu);
    const double b = s3_mean_curvature_from_geodesic_curvature(u, du, ddu);
    ASSERT_LE(std::abs(a - b), 1e-11) << u << " " << du << " " << ddu;
  }
}

TEST(H3MeanCurvature, Examples) {
  // vertical line x = 1 rotates into a Euclidean cylinder, H = v / (2u)
  EXPECT_NEAR(h3_mean_curvature(1.0, 2.0, 0.0, 1.0, 0.0), 1.0, 1e-15);
  // unit semicircle rotates into a totally geodesic hemisphere
  for (double t : {0.2, 0.7, 1.3}) {
    EXPECT_NEAR(h3_mean_curvature(std::cos(t), std::sin(t), -std::sin(t), std::cos(t), 1.0), 0.0,
                1e-15);
  }
  EXPECT_THROW(h3_mean_curvature(0.0, 1.0, 0.0, 1.0, 0.0), DegenerateError);
  EXPECT_THROW(h3_mean_curvature(1.0, 1.0, 0.0, 0.0, 0.0), DegenerateError);
}

TEST(MeanCurvature, FromFundamentalForms) {
  // unit sphere in R^3 with the inward normal: second form equals the first
  const double s2 = std::pow(std::sin(0.7), 2);
  EXPECT_NEAR(mean_curvature({1.0, 0.0, s2, 1.0, 0.0, s2}), 1.0, 1e-15);
  EXPECT_THROW(mean_curvature({1.0, 1.0, 1.0, 0.0, 0.0, 0.0}), DegenerateError);
}

TEST(NumericForms, CliffordTorusIsMinimal) {
  const RevolutionPatch p = latitude_patch(kPi / 4, 64, 64);
  for (double t : {0.1, 1.0, 4.0})
    for (double s : {0.0, 2.0, 5.5}) EXPECT_LT(std::abs(numeric_fundamental_forms(p, t, s).mean_curvature), 1e-7);
}

TEST(NumericForms, S3ClosedFormAgreesProperty) {
  Gen g(42);
  for (int k = 0; k < 100; ++k) {
    const double a = g.uniform(0.3, 1.2), b = g.uniform(-0.2, 0.2), w = g.uniform(0.5, 2.0);
    RevolutionPatch p;
    p.space = RevolutionSpace::S3;
    p.generator = [=](double t) { return ChartPoint{a + b * std::sin(w * t), t}; };
    const double t = g.uniform(-3.0, 3.0), s = g.uniform(0.0, 2 * kPi);
    const double u = a + b * std::sin(w * t);
    const double du = b * w * std::cos(w * t);
    const double ddu = -b * w * w * std::sin(w * t);
    const double closed = s3_mean_curvature(u, du, ddu);
    EXPECT_NEAR(numeric_fundamental_forms(p, t, s).mean_curvature, closed, 1e-4 * std::max(1.0, std::abs(closed)));
  }
}

TEST(NumericForms, H3ClosedFormAgreesProperty) {
  Gen g(43);
  for (int k = 0; k < 100; ++k) {
    const double u0 = g.uniform(0.5, 2.0), v0 = g.uniform(0.5, 2.0);
    const double a = g.uniform(-0.5, 0.5), b = g.uniform(-0.3, 0.3), c = g.uniform(-0.3, 0.3);
    RevolutionPatch p;
    p.space = RevolutionSpace::H3;
    p.generator = [=](double t) { return ChartPoint{u0 + a * t + b * t * t, v0 + t + c * t * t}; };
    const double t = g.uniform(-0.5, 0.5), s = g.uniform(0.0, 2 * kPi);
    const double u = u0 + a * t + b * t * t, v = v0 + t + c * t * t;
    const double du = a + 2 * b * t, dv = 1 + 2 * c * t;
    const double ddu = 2 * b, ddv = 2 * c;
    const double m = du * du + dv * dv;
    const double ke = (du * ddv - dv * ddu) / std::pow(m, 1.5);
    const double closed = h3_mean_curvature(u, v, du, dv, ke);
    EXPECT_NEAR(numeric_fundamental_forms(p, t, s).mean_curvature, closed, 1e-4 * std::max(1.0, std::abs(closed)));
  }
}

TEST(NumericForms, RotationLeavesMeanCurvatureUnchanged) {
  const SampledCurve c = run({Family::HypGeodesic, 1.0, {}}, {1.0, 3.0, kPi / 2}, 1.0);
  const RevolutionPatch p3 = patch_from_curve(c, RevolutionSpace::H3, 16);
  const SampledCurve e = run({Family::Sphere, 1.0, {}}, {0.8, 0.0, kPi / 2}, 1.0);
  const RevolutionPatch p4 = patch_from_curve(e, RevolutionSpace::S3, 16);
  for (const RevolutionPatch* p : {&p3, &p4}) {
    const double t = p->ts[p->ts.size() / 2];
    const double h0 = numeric_fundamental_forms(*p, t, 0.0).mean_curvature;
    for (int j = 1; j < 16; ++j)
      EXPECT_LT(std::abs(numeric_fundamental_forms(*p, t, 2 * kPi * j / 16).mean_curvature - h0), 1e-8);
  }
}

TEST(NumericForms, VerticalLineAndHemisphere) {
  RevolutionPatch line;
  line.space = RevolutionSpace::H3;
  line.generator = [](double t) { return ChartPoint{1.0, t}; };
  EXPECT_NEAR(numeric_fundamental_forms(line, 2.0, 0.3).mean_curvature, 1.0, 1e-7);
  RevolutionPatch dome;
  dome.space = RevolutionSpace::H3;
  dome.generator = [](double t) { return ChartPoint{std::cos(t), std::sin(t)}; };
  EXPECT_LT(std::abs(numeric_fundamental_forms(dome, 0.8, 1.1).mean_curvature), 1e-7);
}

TEST(SurfaceSample, RejectsMismatchedTags) {
  const AmbientVec z3 = AmbientVec::r3(0, 0, 0);
  const AmbientVec p4 = AmbientVec::r4(1, 0, 0, 0);
  EXPECT_THROW(surface_sample(RevolutionSpace::H3, p4, z3, z3, z3, z3, z3), InputError);
  const AmbientVec e1 = AmbientVec::r3(1, 0, 0);
  EXPECT_THROW(surface_sample(RevolutionSpace::H3, AmbientVec::r3(1, 0, 1), e1, e1, z3, z3, z3),
               DegenerateError);
}

TEST(Minimality, ExtrinsicSphericalCatenaryIsMinimalInS3) {
  const SampledCurve ext = run({Family::SphereExtrinsic, 1.0, {}}, {0.8, 0.0, kPi / 2}, 2.0);
  EXPECT_LT(minimality_report(ext, RevolutionSpace::S3).max_abs, 1e-6);
  const SampledCurve intr = run({Family::Sphere, 1.0, {}}, {0.8, 0.0, kPi / 2}, 2.0);
  EXPECT_GT(minimality_report(intr, RevolutionSpace::S3).max_abs, 1e-2);
}

TEST(Minimality, HorodistCatenaryIsMinimalInH3) {
  const SampledCurve hor = run({Family::HypHorodist, 1.0, {}}, {1.0, 3.0, kPi / 2}, 2.0);
  const MinimalityReport r = minimality_report(hor, RevolutionSpace::H3);
  EXPECT_EQ(r.H.size(), hor.size());
  EXPECT_LT(r.max_abs, 1e-6);
  const SampledCurve geo = run({Family::HypGeodesic, 1.0, {}}, {1.0, 3.0, kPi / 2}, 2.0);
  EXPECT_GT(minimality_report(geo, RevolutionSpace::H3).max_abs, 1e-2);
}

TEST(Minimality, HorodistRunsFromRandomStartsAreMinimal) {
  Gen g(44);
  for (int k = 0; k < 10; ++k) {
    const CurveState init{g.uniform(0.5, 2.0), g.uniform(0.5, 3.0), g.uniform(0.0, kPi)};
    const SampledCurve hor = run({Family::HypHorodist, 1.0, {}}, init, 0.5);
    EXPECT_LT(minimality_report(hor, RevolutionSpace::H3).max_abs, 1e-6);
  }
}

TEST(Minimality, NonGraphCurveCannotBeRotatedInS3) {
  // a meridian has constant longitude
  const SampledCurve meridian = run({Family::Sphere, 0.0, {}}, {0.3, 0.0, 0.0}, 0.5);
  EXPECT_THROW(minimality_report(meridian, RevolutionSpace::S3), ResampleError);
  EXPECT_THROW(patch_from_curve(meridian, RevolutionSpace::S3, 8), ResampleError);
}

TEST(Patch, CurvePatchReproducesTheSamples) {
  const SampledCurve c = run({Family::SphereExtrinsic, 1.0, {}}, {0.8, 0.0, kPi / 2}, 1.0);
  const RevolutionPatch p = patch_from_curve(c, RevolutionSpace::S3, 8);
  ASSERT_EQ(p.ts.size(), c.size());
  for (std::size_t i = 0; i < c.size(); i += 97) {
    const ChartPoint q = p.generator(p.ts[i]);
    EXPECT_NEAR(q.u, c.states[i].u, 1e-12);
    EXPECT_NEAR(q.v, c.states[i].v, 1e-12);
  }
  const AmbientVec x = p.point(p.ts[10], 1.0);
  EXPECT_EQ(x.tag(), Ambient::R4);
  EXPECT_NEAR(x.norm(), 1.0, 1e-14);
}

TEST(RevolutionSpaceNames, RoundTrip) {
  EXPECT_EQ(parse_revolution_space("s3"), RevolutionSpace::S3);
  EXPECT_EQ(parse_revolution_space(to_string(RevolutionSpace::H3)), RevolutionSpace::H3);
  EXPECT_THROW(parse_revolution_space("r3"), InputError);
}
