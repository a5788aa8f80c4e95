#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "catforms/family.hpp"
#include "catforms/integrator.hpp"

namespace catforms::cli {

/// Process exit codes shared by all subcommands.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,         ///< check failed, domain violation, or I/O failure
  kNonConvergence = 2,  ///< shooting found no solution
  kBadInput = 3,        ///< bad flags, malformed file, unusable curve
};

/// Acceptance threshold of `verify` and of `surface --expect-minimal`.
inline constexpr double kVerifyTolerance = 1e-5;
inline constexpr double kMinimalTolerance = 1e-5;

/// Largest value of one check in `verify`, with the sample where it occurs.
struct CheckMax {
  double value = 0.0;
  std::size_t row = 0;  ///< 0-based sample index
};

/// What `verify` recomputes from a curve file.
struct VerifyReport {
  std::size_t samples = 0;
  CheckMax law;         ///< |kappa_actual - kappa_target|, recomputed from t, u, v, theta
  double law_mean = 0.0;
  CheckMax kinematic;   ///< |dp - trapezoid of (cos theta, sin theta)| / dt per step
  CheckMax stored;      ///< stored diagnostic columns vs their recomputed values
  double first_integral_drift = 0.0;  ///< NaN without a first integral

  /// Largest of the three checks and the row where it occurs.
  CheckMax worst() const;
  bool passed(double tol = kVerifyTolerance) const { return worst().value < tol; }
};

/// Recomputes diagnostics of `file_curve` (t, states and the stored columns
/// as read from disk) under `family`. Non-finite values count as infinite
/// residuals. Throws InputError for fewer than 3 samples.
VerifyReport verify_curve(const SampledCurve& file_curve, const FamilySpec& family,
                          const Guards& guards = {});

/// Runs one command line; argv[0] is the program name. Output goes to
/// `out`, diagnostics and warnings to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same with the arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace catforms::cli
