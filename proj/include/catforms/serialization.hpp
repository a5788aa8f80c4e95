#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "catforms/family.hpp"
#include "catforms/geometry.hpp"
#include "catforms/integrator.hpp"

namespace catforms {

inline constexpr std::string_view kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

/// Fixed CSV header of curve files.
inline constexpr std::string_view kCsvHeader =
    "t,u,v,theta,kappa_target,kappa_actual,residual,first_integral";

/// "%.17g" rendering, which strtod reads back exactly. NaN prints as "nan".
std::string format_double(double x);

/// Everything needed to regenerate a solve output.
struct RunManifest {
  int schema = kSchemaVersion;
  std::string tool_version{kToolVersion};
  FamilySpec family;
  CurveState initial;
  IntegratorConfig config;
  std::string format = "csv";  ///< "csv" or "json"
  StopReason stop_reason = StopReason::LengthExhausted;
  std::size_t samples = 0;
  double max_abs_residual = 0.0;
  std::optional<double> first_integral_drift;
  std::vector<std::string> warnings;
  std::string timestamp;  ///< UTC, ISO 8601
};

/// Fills stop reason, sample count and the diagnostics summary from `curve`
/// and stamps the current time.
RunManifest make_manifest(const SampledCurve& curve, const CurveState& initial,
                          const IntegratorConfig& cfg, std::string format);

/// Largest |residual| over the samples, ignoring NaN entries.
double max_abs_residual(const SampledCurve& curve);

nlohmann::json manifest_to_json(const RunManifest& m);
/// Throws FormatError on a missing field, a wrong type or another schema.
RunManifest manifest_from_json(const nlohmann::json& j);

/// CSV with the fixed header; empty first_integral cells for families
/// without one.
std::string curve_to_csv(const SampledCurve& curve);

/// Parses curve_to_csv output. family, h and stop_reason are not part of
/// the table and keep their defaults. Throws FormatError with the 1-based
/// line number on malformed input.
SampledCurve curve_from_csv(std::string_view text);

/// The CSV columns as arrays of rows (null for non-finite values, such as a
/// missing first integral) plus the manifest under "manifest".
nlohmann::json curve_to_json(const SampledCurve& curve, const RunManifest& manifest);

struct JsonCurve {
  SampledCurve curve;
  RunManifest manifest;
};

/// Inverse of curve_to_json; family, h and stop reason come from the
/// manifest. Throws FormatError.
JsonCurve curve_from_json(const nlohmann::json& j);

/// Path of the sidecar manifest written next to `out`.
std::string manifest_path(const std::string& out);

/// Whole-file helpers; throw IoError.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

} // namespace catforms
