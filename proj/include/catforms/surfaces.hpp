#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "catforms/geometry.hpp"
#include "catforms/integrator.hpp"

namespace catforms {

/// Ambient space of a surface of revolution. S^3: the generating curve lies
/// in S^2 x {0} and is rotated about the equator geodesic. H^3 (upper
/// half-space): the half-plane curve (x, y) sits at (x, 0, y) and is
/// rotated about the x3-axis.
enum class RevolutionSpace { S3, H3 };

std::string_view to_string(RevolutionSpace s);
/// "s3" or "h3"; throws InputError.
RevolutionSpace parse_revolution_space(std::string_view s);

struct FundamentalForms {
  double E = 0.0, F = 0.0, G = 0.0;
  double h11 = 0.0, h12 = 0.0, h22 = 0.0;
};

/// (E h22 - 2F h12 + G h11) / (2 (EG - F^2)). Throws DegenerateError when
/// EG - F^2 <= 0.
double mean_curvature(const FundamentalForms& f);

/// Mean curvature of the S^3 revolution of the graph v = t, u = u(t):
/// [cos u (cos u + cos 3u) + (3 cos 2u - 1) u'^2 - 2 u'' sin u cos u]
///   / [2 sin u (u'^2 + cos^2 u)^{3/2}].
/// This normalization is the sum of the principal curvatures (2 cot 2u on
/// the parallel u = const). Throws DegenerateError when sin u = 0.
double s3_mean_curvature(double u, double du, double ddu);

/// The same quantity through the geodesic curvature of the generating
/// curve: (cos^2 u - sin u |g'| k_s) / (sin u |g'|), |g'| = sqrt(u'^2 + cos^2 u).
double s3_mean_curvature_from_geodesic_curvature(double u, double du, double ddu);

/// Mean curvature in H^3 of the revolution of (u(t), v(t)):
/// H = (v k_e + v v' / (u sqrt m) + 2 u' / sqrt m) / 2. Throws DegenerateError
/// when u = 0 or m = 0.
double h3_mean_curvature(double u, double v, double du, double dv, double kappa_e);

/// Surface of revolution: `generator(t)` is the chart point of the
/// generating curve (for S^3 the curve must satisfy generator(t).v == t),
/// `ts` the generating samples used for meshes and reports, and `angular`
/// the number of angular intervals on [0, 2 pi].
struct RevolutionPatch {
  RevolutionSpace space = RevolutionSpace::S3;
  std::function<ChartPoint(double)> generator;
  std::vector<double> ts;
  std::size_t angular = 64;

  /// Phi(t, s): R^4 point for S^3, R^3 point for H^3.
  AmbientVec point(double t, double s) const;
};

/// The parallel u = u0 of S^2 rotated in S^3 over t in [0, 2 pi] with
/// samples + 1 generating samples (u0 = pi/4 is the Clifford torus).
RevolutionPatch latitude_patch(double u0, std::size_t samples, std::size_t angular);

/// Patch generated by an integrated curve. H^3 uses the curve parameter t;
/// S^3 reparametrizes by the longitude v, which must be strictly monotone
/// (ResampleError otherwise). Between samples the flow is re-integrated
/// from the previous sample (cubic Hermite interpolation when the curve
/// has no step size).
RevolutionPatch patch_from_curve(const SampledCurve& curve, RevolutionSpace space,
                                 std::size_t angular);

struct SurfaceSample {
  FundamentalForms forms;
  AmbientVec point;
  AmbientVec normal;
  double mean_curvature = 0.0;
};

/// Fourth-order central differences of Phi with step delta. S^3: N is orthogonal to Phi,
/// Phi_t and Phi_s with the orientation of the closed-form formula, and the
/// reported H is twice the value of mean_curvature(forms) so that it matches
/// s3_mean_curvature. H^3: forms and N are Euclidean, N ~ Phi_t x Phi_s,
/// and H = x3 H_e + N_3. Throws DegenerateError if EG - F^2 <= delta^2.
SurfaceSample numeric_fundamental_forms(const RevolutionPatch& patch, double t, double s,
                                        double delta = 1e-3);

/// The same assembly from the position and its partial derivatives in any
/// parametrization (tags must match the space). Throws DegenerateError when
/// EG - F^2 <= 0.
SurfaceSample surface_sample(RevolutionSpace space, const AmbientVec& point,
                             const AmbientVec& dt, const AmbientVec& ds, const AmbientVec& dtt,
                             const AmbientVec& dts, const AmbientVec& dss);

struct MinimalityReport {
  std::vector<double> t;  ///< rotation parameter per sample (v for S^3)
  std::vector<double> H;
  double max_abs = 0.0;
  double mean_abs = 0.0;
};

/// Closed-form mean curvature along the curve. Derivatives come from the
/// flow law: on S^3, u_v = cot theta and u_vv = -theta' / sin^3 theta; on
/// H^3, k_e = theta'. Throws ResampleError when an S^3 curve is not a graph
/// over v, DegenerateError when it leaves sin u > 0 / u > 0.
MinimalityReport minimality_report(const SampledCurve& curve, RevolutionSpace space);

} // namespace catforms
