#include "catforms/serialization.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include "catforms/errors.hpp"

namespace catforms {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kColumns = 8;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json number_or_null(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

double number_from(const nlohmann::json& j) {
  if (j.is_null()) return kNaN;
  if (!j.is_number()) throw FormatError("expected a number");
  return j.get<double>();
}

double parse_cell(std::string_view cell, bool allow_empty, std::size_t line) {
  if (cell.empty()) {
    if (allow_empty) return kNaN;
    throw FormatError("line " + std::to_string(line) + ": empty value");
  }
  const std::string s(cell);
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw FormatError("line " + std::to_string(line) + ": not a number '" + s + "'");
  return x;
}

template <class F>
auto wrap_format(F&& f) {
  try {
    return f();
  } catch (const FormatError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  } catch (const Error& e) {
    throw FormatError(e.what());
  }
}

} // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double max_abs_residual(const SampledCurve& curve) {
  double m = 0.0;
  for (const CurvatureReport& r : curve.curvature)
    if (!std::isnan(r.residual)) m = std::max(m, std::abs(r.residual));
  return m;
}

RunManifest make_manifest(const SampledCurve& curve, const CurveState& initial,
                          const IntegratorConfig& cfg, std::string format) {
  RunManifest m;
  m.family = curve.family;
  m.initial = initial;
  m.config = cfg;
  m.format = std::move(format);
  m.stop_reason = curve.stop_reason;
  m.samples = curve.size();
  m.max_abs_residual = max_abs_residual(curve);
  const double drift = first_integral_drift(curve);
  if (!std::isnan(drift)) m.first_integral_drift = drift;
  m.warnings = curve.warnings;
  m.timestamp = utc_timestamp();
  return m;
}

nlohmann::json manifest_to_json(const RunManifest& m) {
  nlohmann::json j;
  j["schema"] = m.schema;
  j["tool"] = "catforms";
  j["tool_version"] = m.tool_version;
  j["family"] = std::string(to_string(m.family.kind));
  j["alpha"] = m.family.alpha;
  j["c"] = m.family.paper_c ? nlohmann::json(*m.family.paper_c) : nlohmann::json(nullptr);
  j["initial"] = {{"u", m.initial.u}, {"v", m.initial.v}, {"theta", m.initial.theta}};
  j["config"] = {{"h", m.config.h},
                 {"max_length", m.config.max_length},
                 {"eps_d", m.config.eps_d},
                 {"eps_pole", m.config.eps_pole}};
  j["format"] = m.format;
  j["stop_reason"] = std::string(to_string(m.stop_reason));
  j["samples"] = m.samples;
  j["diagnostics"] = {
      {"max_abs_residual", number_or_null(m.max_abs_residual)},
      {"first_integral_drift",
       m.first_integral_drift ? number_or_null(*m.first_integral_drift) : nlohmann::json(nullptr)}};
  j["warnings"] = m.warnings;
  j["timestamp"] = m.timestamp;
  return j;
}

RunManifest manifest_from_json(const nlohmann::json& j) {
  return wrap_format([&] {
    RunManifest m;
    m.schema = j.at("schema").get<int>();
    if (m.schema != kSchemaVersion)
      throw FormatError("unsupported manifest schema " + std::to_string(m.schema));
    m.tool_version = j.at("tool_version").get<std::string>();
    m.family.kind = parse_family(j.at("family").get<std::string>());
    m.family.alpha = j.at("alpha").get<double>();
    if (j.contains("c") && !j.at("c").is_null()) m.family.paper_c = j.at("c").get<double>();
    m.family.validate();
    const auto& init = j.at("initial");
    m.initial = {init.at("u").get<double>(), init.at("v").get<double>(),
                 init.at("theta").get<double>()};
    const auto& cfg = j.at("config");
    m.config.h = cfg.at("h").get<double>();
    m.config.max_length = cfg.at("max_length").get<double>();
    m.config.eps_d = cfg.at("eps_d").get<double>();
    m.config.eps_pole = cfg.at("eps_pole").get<double>();
    m.config.validate();
    m.format = j.at("format").get<std::string>();
    if (m.format != "csv" && m.format != "json")
      throw FormatError("unknown output format '" + m.format + "'");
    m.stop_reason = parse_stop_reason(j.at("stop_reason").get<std::string>());
    m.samples = j.at("samples").get<std::size_t>();
    const auto& diag = j.at("diagnostics");
    m.max_abs_residual = number_from(diag.at("max_abs_residual"));
    if (!diag.at("first_integral_drift").is_null())
      m.first_integral_drift = number_from(diag.at("first_integral_drift"));
    m.warnings = j.value("warnings", std::vector<std::string>{});
    m.timestamp = j.value("timestamp", std::string{});
    return m;
  });
}

std::string curve_to_csv(const SampledCurve& curve) {
  const std::size_t n = curve.size();
  if (curve.t.size() != n || curve.curvature.size() != n || curve.first_integral.size() != n)
    throw InputError("curve diagnostics are incomplete");
  std::string out(kCsvHeader);
  out += '\n';
  for (std::size_t i = 0; i < n; ++i) {
    const CurveState& s = curve.states[i];
    const CurvatureReport& k = curve.curvature[i];
    for (double x : {curve.t[i], s.u, s.v, s.theta, k.kappa_target, k.kappa_actual, k.residual}) {
      out += format_double(x);
      out += ',';
    }
    if (!std::isnan(curve.first_integral[i])) out += format_double(curve.first_integral[i]);
    out += '\n';
  }
  return out;
}

SampledCurve curve_from_csv(std::string_view text) {
  SampledCurve curve;
  std::size_t line_no = 0;
  bool header = false;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!header) {
      if (line != kCsvHeader) throw FormatError("line 1: unexpected CSV header");
      header = true;
      continue;
    }
    if (line.empty()) {
      if (text.empty()) break;
      throw FormatError("line " + std::to_string(line_no) + ": empty row");
    }
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (cells.size() != kColumns)
      throw FormatError("line " + std::to_string(line_no) + ": expected 8 columns, got " +
                        std::to_string(cells.size()));
    double x[kColumns];
    for (std::size_t c = 0; c < kColumns; ++c)
      x[c] = parse_cell(cells[c], c + 1 == kColumns, line_no);
    curve.t.push_back(x[0]);
    curve.states.push_back({x[1], x[2], x[3]});
    CurvatureReport r;
    r.kappa_target = x[4];
    r.kappa_actual = x[5];
    r.residual = x[6];
    curve.curvature.push_back(r);
    curve.first_integral.push_back(x[7]);
  }
  if (!header) throw FormatError("empty file");
  return curve;
}

nlohmann::json curve_to_json(const SampledCurve& curve, const RunManifest& manifest) {
  const std::size_t n = curve.size();
  if (curve.t.size() != n || curve.curvature.size() != n || curve.first_integral.size() != n)
    throw InputError("curve diagnostics are incomplete");
  nlohmann::json j;
  j["schema"] = kSchemaVersion;
  j["columns"] = {"t", "u", "v", "theta", "kappa_target", "kappa_actual", "residual",
                  "first_integral"};
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < n; ++i) {
    const CurveState& s = curve.states[i];
    const CurvatureReport& k = curve.curvature[i];
    rows.push_back({number_or_null(curve.t[i]), number_or_null(s.u), number_or_null(s.v),
                    number_or_null(s.theta), number_or_null(k.kappa_target),
                    number_or_null(k.kappa_actual), number_or_null(k.residual),
                    number_or_null(curve.first_integral[i])});
  }
  j["rows"] = std::move(rows);
  j["manifest"] = manifest_to_json(manifest);
  return j;
}

JsonCurve curve_from_json(const nlohmann::json& j) {
  return wrap_format([&] {
    if (j.at("schema").get<int>() != kSchemaVersion) throw FormatError("unsupported schema");
    JsonCurve out;
    out.manifest = manifest_from_json(j.at("manifest"));
    SampledCurve& c = out.curve;
    c.family = out.manifest.family;
    c.h = out.manifest.config.h;
    c.stop_reason = out.manifest.stop_reason;
    c.warnings = out.manifest.warnings;
    std::size_t line = 0;
    for (const auto& row : j.at("rows")) {
      ++line;
      if (!row.is_array() || row.size() != kColumns)
        throw FormatError("row " + std::to_string(line) + ": expected 8 values");
      double x[kColumns];
      for (std::size_t k = 0; k < kColumns; ++k) x[k] = number_from(row[k]);
      c.t.push_back(x[0]);
      c.states.push_back({x[1], x[2], x[3]});
      CurvatureReport r;
      r.kappa_target = x[4];
      r.kappa_actual = x[5];
      r.residual = x[6];
      c.curvature.push_back(r);
      c.first_integral.push_back(x[7]);
    }
    return out;
  });
}

std::string manifest_path(const std::string& out) { return out + ".manifest.json"; }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("failed reading '" + path + "'");
  return s;
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

} // namespace catforms
