#pragma once

#include <cstddef>
#include <functional>

#include "catforms/family.hpp"
#include "catforms/integrator.hpp"

namespace catforms {

/// Adaptive composite Simpson rule with interval halving. Throws
/// QuadratureError when a subinterval still fails the local test at
/// `max_depth` halvings.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 48);

/// Bisection for a sign change of f on [a, b]; stops when the bracket is
/// shorter than `tol` or after 200 halvings. Throws InputError if f(a) and
/// f(b) have the same strict sign.
double bisect_root(const std::function<double(double)>& f, double a, double b,
                   double tol = 0.0);

struct QuadratureConfig {
  double tol = 1e-10;       ///< absolute tolerance on the accumulated integral
  double eps_rad = 1e-14;   ///< radicand values below this count as turning points
  int max_depth = 48;
  std::size_t scan = 4000;  ///< grid used to locate the admissible interval
};

/// Radicand of the graph quadrature: u^{2a} cos^2 u - c^2 (sphere, x = u) or
/// (log t)^{2a} - c^2 t^2 (horocycle, x = v). Throws UnsupportedFamily.
double graph_radicand(const FamilySpec& family, double c, double x);

struct AdmissibleInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_turning = false;  ///< radicand vanishes at lo
  bool hi_turning = false;
};

/// The part of [lo, hi] where the radicand is positive, with turning points
/// refined by bisection. Throws QuadratureError if the radicand is
/// non-positive throughout or the positive set is not a single interval.
AdmissibleInterval admissible_interval(const FamilySpec& family, double c, double lo, double hi,
                                       const QuadratureConfig& cfg = {});

/// Builds the curve with first integral c as a graph over the independent
/// variable (u for the sphere, with v(lo) = 0; v for the horocycle family,
/// with u(lo) = 0) on the admissible part of [lo, hi], returning n samples.
/// Turning points are integrated through the substitution
/// x = lo + (hi - lo)(1 - cos phi) / 2, which removes the inverse square-root
/// singularity, so samples cluster near the ends. t is the cumulative chord
/// length, so the samples are not equally spaced and h is 0.
SampledCurve graph_by_quadrature(const FamilySpec& family, double c, double lo, double hi,
                                 std::size_t n, const QuadratureConfig& cfg = {});

} // namespace catforms
