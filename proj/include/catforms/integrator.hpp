#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "catforms/curvature.hpp"
#include "catforms/family.hpp"
#include "catforms/geometry.hpp"

namespace catforms {

struct IntegratorConfig {
  double h = 1e-3;           ///< chart arc-length step
  double max_length = 10.0;  ///< chart arc-length budget
  double eps_d = 1e-6;
  double eps_pole = 1e-6;

  Guards guards() const { return {eps_d, eps_pole}; }
  /// Throws InputError unless h > 0 and max_length > 0.
  void validate() const;
};

enum class StopReason { LengthExhausted, DomainGuard, PoleGuard, NumericFailure };

std::string_view to_string(StopReason r);
StopReason parse_stop_reason(std::string_view s);

/// Solution samples of the arc-length flow plus per-sample diagnostics.
/// `curvature` and `first_integral` always have states.size() entries;
/// first_integral holds NaN for families without a conserved momentum.
struct SampledCurve {
  FamilySpec family;
  double h = 0.0;
  std::vector<double> t;
  std::vector<CurveState> states;
  std::vector<CurvatureReport> curvature;
  std::vector<double> first_integral;
  StopReason stop_reason = StopReason::LengthExhausted;
  std::vector<std::string> warnings;

  std::size_t size() const { return states.size(); }
  bool empty() const { return states.empty(); }
};

/// theta' used by the integrator: theta_rhs, or the negated graph curvature
/// paper_mode_sphere_rhs(c, u) when family.paper_c is set.
double flow_rhs(const FamilySpec& family, const CurveState& s, const Guards& guards = {});

/// Space-form curvature the flow prescribes at `s` (the law value; in paper
/// mode the curvature implied by the plotting ODE).
double law_curvature(const FamilySpec& family, const CurveState& s, const Guards& guards = {});

/// One classical RK4 step of length h from s. Propagates DomainError and
/// DegenerateError raised by the law at any stage.
CurveState rk4_step(const FamilySpec& family, const CurveState& s, double h,
                    const Guards& guards = {});

bool has_first_integral(Family f);

/// Conserved momentum: u^a v' cos^2 u / |gamma'| on the sphere and
/// u' (log v)^a / (v sqrt(m)) for the horocycle family.
/// Throws UnsupportedFamily for the other families.
double first_integral(const FamilySpec& family, const CurveState& s);

/// Fixed-step classical RK4 on (u, v, theta). Stops when the budget is spent
/// or the next state would leave the admissible region. Throws InputError if
/// the initial state is not admissible with twice the configured margins.
SampledCurve integrate(const FamilySpec& family, const CurveState& initial,
                       const IntegratorConfig& cfg);

/// Recomputes curvature reports and first-integral values from t and the
/// states: kappa_actual comes from second-order finite differences of theta
/// in t, converted to the space-form curvature.
void compute_diagnostics(SampledCurve& curve, const Guards& guards = {});

/// max |I_k - I_0| over the samples; NaN if the family has no first integral.
double first_integral_drift(const SampledCurve& curve);

struct MetricResample {
  SampledCurve curve;
  double total_length = 0.0;
};

/// Length of the chart segment a -> b in the family's space-form metric
/// (Simpson rule along the straight chart segment).
double metric_segment_length(Family family, ChartPoint a, ChartPoint b);

/// Reparametrizes the curve by the space-form arc length: same sample count,
/// equal metric spacing, linear interpolation between input samples.
MetricResample resample_metric_arclength(const SampledCurve& curve);

} // namespace catforms
