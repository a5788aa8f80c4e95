#include "catforms/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "catforms/curvature.hpp"
#include "catforms/errors.hpp"
#include "catforms/mesh.hpp"
#include "catforms/serialization.hpp"
#include "catforms/surfaces.hpp"
#include "catforms/variational.hpp"

namespace catforms::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x, const char* spec = "%.6e") {
  if (std::isnan(x)) return "n/a";
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

double finite_or_inf(double x) { return std::isfinite(x) ? std::abs(x) : kInf; }

void bump(CheckMax& m, double value, std::size_t row) {
  if (value > m.value || (std::isinf(value) && !std::isinf(m.value))) m = {value, row};
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

double parse_number(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(x))
    throw InputError("bad number '" + s + "' for " + what);
  return x;
}

ChartPoint parse_point(const std::string& s, const std::string& what) {
  const std::size_t comma = s.find(',');
  if (comma == std::string::npos) throw InputError(what + " must be given as U,V");
  return {parse_number(s.substr(0, comma), what), parse_number(s.substr(comma + 1), what)};
}

// ---------------------------------------------------------------- solve core

struct SolveRequest {
  FamilySpec family;
  CurveState initial;
  IntegratorConfig cfg;
  std::string format = "csv";
  std::string out;
};

struct SolveOutcome {
  SampledCurve curve;
  RunManifest manifest;
};

// Throws InputError for bad parameters and DomainError when the initial
// state is not admissible.
SolveOutcome solve_and_write(const SolveRequest& req) {
  req.family.validate();
  req.cfg.validate();
  if (req.format != "csv" && req.format != "json")
    throw InputError("format must be csv or json");
  if (check_admissible(req.family.kind, req.initial.point(), req.cfg.guards(), 2.0) !=
      Admissibility::Ok)
    throw DomainError("initial state (" + format_double(req.initial.u) + ", " +
                      format_double(req.initial.v) + ") is not admissible for family " +
                      std::string(to_string(req.family.kind)));
  SolveOutcome r;
  r.curve = integrate(req.family, req.initial, req.cfg);
  r.manifest = make_manifest(r.curve, req.initial, req.cfg, req.format);
  if (req.format == "csv")
    write_text_file(req.out, curve_to_csv(r.curve));
  else
    write_text_file(req.out, curve_to_json(r.curve, r.manifest).dump(1) + "\n");
  write_text_file(manifest_path(req.out), manifest_to_json(r.manifest).dump(2) + "\n");
  return r;
}

// ---------------------------------------------------------------- curve input

struct LoadedCurve {
  SampledCurve curve;
  std::optional<RunManifest> manifest;
};

LoadedCurve load_curve(const std::string& path) {
  LoadedCurve lc;
  const std::string text = read_text_file(path);
  if (ends_with(path, ".json")) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("malformed JSON: ") + e.what());
    }
    JsonCurve jc = curve_from_json(j);
    lc.curve = std::move(jc.curve);
    lc.manifest = std::move(jc.manifest);
    return lc;
  }
  lc.curve = curve_from_csv(text);
  const std::string side = manifest_path(path);
  if (std::filesystem::exists(side)) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_text_file(side));
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("malformed manifest: ") + e.what());
    }
    lc.manifest = manifest_from_json(j);
    lc.curve.family = lc.manifest->family;
    lc.curve.h = lc.manifest->config.h;
    lc.curve.stop_reason = lc.manifest->stop_reason;
  }
  return lc;
}

// Family from explicit flags, falling back to the manifest.
FamilySpec resolve_family(const std::optional<std::string>& name, const std::optional<double>& alpha,
                          const std::optional<double>& c, const std::optional<RunManifest>& m) {
  FamilySpec f;
  if (m) f = m->family;
  if (name) f.kind = parse_family(*name);
  if (alpha) f.alpha = *alpha;
  if (c) f.paper_c = *c;
  if (!m && (!name || !alpha))
    throw InputError("no manifest found next to the curve; pass --family and --alpha");
  f.validate();
  return f;
}

// ---------------------------------------------------------------- sweep grid

struct GridAxis {
  std::string name;
  std::vector<double> values;
};

GridAxis parse_grid(const std::string& spec) {
  const std::size_t eq = spec.find('=');
  if (eq == std::string::npos) throw InputError("grid must look like NAME=v1,v2 or NAME=a:b:n");
  GridAxis axis;
  axis.name = spec.substr(0, eq);
  static const std::vector<std::string> names{"c", "alpha", "u0", "v0", "theta0"};
  if (std::find(names.begin(), names.end(), axis.name) == names.end())
    throw InputError("grid parameter must be one of c, alpha, u0, v0, theta0");
  const std::string body = spec.substr(eq + 1);
  if (body.empty()) return axis;
  if (body.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(body);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw InputError("range grid must be a:b:n");
    const double a = parse_number(parts[0], "grid"), b = parse_number(parts[1], "grid");
    const double n = parse_number(parts[2], "grid count");
    if (n < 0 || n != std::floor(n)) throw InputError("grid count must be a whole number");
    const auto count = static_cast<std::size_t>(n);
    for (std::size_t k = 0; k < count; ++k)
      axis.values.push_back(count == 1 ? a
                                       : a + (b - a) * static_cast<double>(k) /
                                                 static_cast<double>(count - 1));
    return axis;
  }
  std::stringstream ss(body);
  for (std::string p; std::getline(ss, p, ',');) axis.values.push_back(parse_number(p, "grid"));
  return axis;
}

std::size_t default_jobs() {
  const char* env = std::getenv("CATFORMS_JOBS");
  if (!env || !*env) return 1;
  const double j = parse_number(env, "CATFORMS_JOBS");
  if (j < 1 || j != std::floor(j)) throw InputError("CATFORMS_JOBS must be a positive integer");
  return static_cast<std::size_t>(j);
}

// ---------------------------------------------------------------- subcommands

struct CommonSolveFlags {
  std::optional<std::string> family;
  std::optional<double> alpha, u0, v0, theta0, c;
  double step = 1e-3;
  double length = 10.0;
  double eps_d = 1e-6;
  double eps_pole = 1e-6;
  std::string format = "csv";

  void add_to(CLI::App* app) {
    app->add_option("--family", family, "euclidean|sphere|sphere-extrinsic|hyp-geodesic|"
                                        "hyp-horodist|horocycle");
    app->add_option("--alpha", alpha, "Exponent of the weight");
    app->add_option("--u0", u0, "Initial u (latitude or x)");
    app->add_option("--v0", v0, "Initial v (longitude or y)");
    app->add_option("--theta0", theta0, "Initial heading in radians");
    app->add_option("--c", c, "Paper-mode constant (sphere, alpha = 1)");
    app->add_option("--step", step, "Arc-length step")->capture_default_str();
    app->add_option("--length", length, "Arc-length budget")->capture_default_str();
    app->add_option("--eps-d", eps_d, "Reference-line guard")->capture_default_str();
    app->add_option("--eps-pole", eps_pole, "Pole guard")->capture_default_str();
    app->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  }

  IntegratorConfig config() const {
    IntegratorConfig cfg;
    cfg.h = step;
    cfg.max_length = length;
    cfg.eps_d = eps_d;
    cfg.eps_pole = eps_pole;
    return cfg;
  }
};

int cmd_solve(const CommonSolveFlags& f, const std::optional<std::string>& from_manifest,
              const std::string& out_path, std::ostream& out, std::ostream& err) {
  SolveRequest req;
  req.out = out_path;
  if (from_manifest) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_text_file(*from_manifest));
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("malformed manifest: ") + e.what());
    }
    const RunManifest m = manifest_from_json(j);
    req.family = m.family;
    req.initial = m.initial;
    req.cfg = m.config;
    req.format = m.format;
  } else {
    if (!f.family || !f.alpha || !f.u0 || !f.v0 || !f.theta0)
      throw InputError("solve needs --family, --alpha, --u0, --v0 and --theta0");
    req.family.kind = parse_family(*f.family);
    req.family.alpha = *f.alpha;
    req.family.paper_c = f.c;
    req.initial = {*f.u0, *f.v0, *f.theta0};
    req.cfg = f.config();
    req.format = f.format;
  }
  const SolveOutcome r = solve_and_write(req);
  for (const std::string& w : r.curve.warnings) err << "warning: " << w << "\n";
  out << "family: " << to_string(req.family.kind) << " alpha " << format_double(req.family.alpha)
      << "\n";
  out << "samples: " << r.curve.size() << "\n";
  out << "stop_reason: " << to_string(r.curve.stop_reason) << "\n";
  out << "max_abs_residual: " << fmt(r.manifest.max_abs_residual) << "\n";
  out << "first_integral_drift: "
      << (r.manifest.first_integral_drift ? fmt(*r.manifest.first_integral_drift) : "n/a") << "\n";
  out << "wrote: " << req.out << " and " << manifest_path(req.out) << "\n";
  return kOk;
}

int cmd_verify(const std::string& in, const std::string& family_name, double alpha,
               const std::optional<double>& c, std::ostream& out) {
  const LoadedCurve lc = load_curve(in);
  FamilySpec family;
  family.kind = parse_family(family_name);
  family.alpha = alpha;
  family.paper_c = c;
  family.validate();
  Guards guards;
  if (lc.manifest) guards = lc.manifest->config.guards();
  const VerifyReport r = verify_curve(lc.curve, family, guards);
  auto row = [](const CheckMax& m) {
    return " (row " + std::to_string(m.row) + ", line " + std::to_string(m.row + 2) + ")";
  };
  out << "samples: " << r.samples << "\n";
  out << "law residual: max " << fmt(r.law.value) << row(r.law) << ", mean " << fmt(r.law_mean)
      << "\n";
  out << "kinematic residual: max " << fmt(r.kinematic.value) << row(r.kinematic) << "\n";
  out << "stored columns: max mismatch " << fmt(r.stored.value) << row(r.stored) << "\n";
  out << "first_integral_drift: " << fmt(r.first_integral_drift) << "\n";
  const CheckMax w = r.worst();
  if (r.passed()) {
    out << "result: ok (max " << fmt(w.value) << " < " << fmt(kVerifyTolerance, "%.0e") << ")\n";
    return kOk;
  }
  out << "result: FAIL at row " << w.row << " (line " << w.row + 2 << "): " << fmt(w.value)
      << " >= " << fmt(kVerifyTolerance, "%.0e") << "\n";
  return kFailure;
}

struct OracleFlags {
  std::string family;
  double alpha = 1.0;
  std::string a, b;
  std::size_t nodes = 201;
  std::size_t iters = 200000;
  double tol = 1e-10;
  double step = 1e-3;
  double length = 20.0;
};

int cmd_oracle(const OracleFlags& f, std::ostream& out, std::ostream& err) {
  FamilySpec family;
  family.kind = parse_family(f.family);
  family.alpha = f.alpha;
  family.validate();
  const ChartPoint a = parse_point(f.a, "--a"), b = parse_point(f.b, "--b");
  if (a == b) throw InputError("endpoints must differ");
  if (f.nodes < 3) throw InputError("--nodes must be at least 3");
  for (const ChartPoint& p : {a, b})
    if (check_admissible(family.kind, p, Guards{}) != Admissibility::Ok)
      throw InputError("endpoint (" + format_double(p.u) + ", " + format_double(p.v) +
                       ") is not admissible");

  ShootingConfig sc;
  sc.h = f.step;
  sc.max_length = f.length;
  ShootingResult shot;
  try {
    shot = shoot(family, a, b, sc);
  } catch (const NonConvergence& e) {
    err << "error: shooting failed: " << e.what() << "\n";
    return kNonConvergence;
  }
  MinimizerConfig mc;
  mc.max_iters = f.iters;
  mc.grad_tol = f.tol;
  mc.validate();
  const MinimizeResult mr = minimize_from_chord(family, a, b, f.nodes, mc);
  const double dist = compare_to_ode(mr.polyline, shot.curve);
  const double n = static_cast<double>(f.nodes);
  const double limit = 10.0 / (n * n);
  out << "family: " << to_string(family.kind) << " alpha " << format_double(family.alpha) << "\n";
  out << "shooting: theta0 " << format_double(shot.theta0) << ", length "
      << fmt(shot.length) << ", miss " << fmt(shot.miss, "%.3e") << "\n";
  out << "minimizer: " << to_string(mr.stop) << " after " << mr.iterations
      << " iterations, energy " << format_double(mr.energy_trace.back()) << "\n";
  out << "gradient: max component " << fmt(mr.grad_max, "%.3e") << ", descent direction "
      << fmt(mr.descent_max, "%.3e") << "\n";
  out << "distance: " << fmt(dist, "%.6e") << " (limit " << fmt(limit, "%.6e") << ")\n";
  const bool ok = dist < limit;
  out << "result: " << (ok ? "ok" : "FAIL") << "\n";
  return ok ? kOk : kFailure;
}

struct SurfaceFlags {
  std::string space;
  std::string in;
  std::size_t angular = 64;
  std::optional<std::string> export_path;
  bool expect_minimal = false;
  std::optional<std::string> family;
  std::optional<double> alpha, c;
};

int cmd_surface(const SurfaceFlags& f, std::ostream& out) {
  const RevolutionSpace space = parse_revolution_space(f.space);
  LoadedCurve lc = load_curve(f.in);
  lc.curve.family = resolve_family(f.family, f.alpha, f.c, lc.manifest);
  if (f.angular < 1) throw InputError("--angular must be positive");
  MinimalityReport r;
  try {
    r = minimality_report(lc.curve, space);
  } catch (const DegenerateError& e) {
    throw InputError(std::string("curve cannot be revolved: ") + e.what());
  }
  out << "space: " << to_string(space) << "\n";
  out << "family: " << to_string(lc.curve.family.kind) << " alpha "
      << format_double(lc.curve.family.alpha) << "\n";
  out << "samples: " << r.H.size() << "\n";
  out << "max |H|: " << fmt(r.max_abs, "%.6e") << "\n";
  out << "mean |H|: " << fmt(r.mean_abs, "%.6e") << "\n";
  if (f.export_path) {
    const Mesh m = export_mesh(patch_from_curve(lc.curve, space, f.angular), *f.export_path);
    out << "mesh: " << m.vertices.size() << " vertices, " << m.faces.size() << " triangles -> "
        << *f.export_path << "\n";
  }
  if (!f.expect_minimal) return kOk;
  const bool ok = r.max_abs < kMinimalTolerance;
  out << "minimal: " << (ok ? "yes" : "no") << " (tolerance " << fmt(kMinimalTolerance, "%.0e")
      << ")\n";
  return ok ? kOk : kFailure;
}

struct SweepRun {
  std::size_t index = 0;
  std::vector<std::pair<std::string, double>> params;
  std::string file;
  bool ok = false;
  std::string message;
  std::string stop_reason;
  std::size_t samples = 0;
};

int cmd_sweep(const CommonSolveFlags& f, const std::vector<std::string>& grids,
              std::optional<std::size_t> jobs_flag, const std::string& dir, std::ostream& out,
              std::ostream& err) {
  if (!f.family || !f.alpha) throw InputError("sweep needs --family and --alpha");
  std::vector<GridAxis> axes;
  for (const std::string& g : grids) axes.push_back(parse_grid(g));
  std::size_t total = axes.empty() ? 0 : 1;
  for (const GridAxis& ax : axes) total *= ax.values.size();
  if (total == 0) throw InputError("grid is empty");
  const std::size_t jobs = jobs_flag ? *jobs_flag : default_jobs();
  if (jobs < 1) throw InputError("--jobs must be positive");
  f.config().validate();
  parse_family(*f.family);

  std::filesystem::create_directories(dir);
  std::vector<SweepRun> runs(total);
  for (std::size_t k = 0; k < total; ++k) {
    SweepRun& r = runs[k];
    r.index = k;
    std::size_t rest = k;
    // last axis varies fastest
    std::vector<std::pair<std::string, double>> params(axes.size());
    for (std::size_t a = axes.size(); a-- > 0;) {
      params[a] = {axes[a].name, axes[a].values[rest % axes[a].values.size()]};
      rest /= axes[a].values.size();
    }
    r.params = std::move(params);
    char name[32];
    std::snprintf(name, sizeof name, "run-%04zu.%s", k, f.format.c_str());
    r.file = name;
  }

  auto execute = [&](SweepRun& r) {
    try {
      SolveRequest req;
      req.family.kind = parse_family(*f.family);
      req.family.alpha = *f.alpha;
      req.family.paper_c = f.c;
      std::optional<double> u0 = f.u0, v0 = f.v0, theta0 = f.theta0;
      for (const auto& [name, value] : r.params) {
        if (name == "c") req.family.paper_c = value;
        if (name == "alpha") req.family.alpha = value;
        if (name == "u0") u0 = value;
        if (name == "v0") v0 = value;
        if (name == "theta0") theta0 = value;
      }
      if (!u0 || !v0 || !theta0)
        throw InputError("initial state needs u0, v0 and theta0 (flag or grid)");
      req.initial = {*u0, *v0, *theta0};
      req.cfg = f.config();
      req.format = f.format;
      req.out = (std::filesystem::path(dir) / r.file).string();
      const SolveOutcome o = solve_and_write(req);
      r.ok = true;
      r.stop_reason = std::string(to_string(o.curve.stop_reason));
      r.samples = o.curve.size();
      if (!o.curve.warnings.empty()) r.message = o.curve.warnings.front();
    } catch (const std::exception& e) {
      r.ok = false;
      r.message = e.what();
    }
  };

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++) execute(runs[k]);
  };
  std::vector<std::thread> pool;
  const std::size_t nthreads = std::min(jobs, total);
  for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  nlohmann::json summary;
  summary["schema"] = kSchemaVersion;
  summary["family"] = *f.family;
  summary["alpha"] = *f.alpha;
  summary["runs"] = nlohmann::json::array();
  std::size_t succeeded = 0;
  for (const SweepRun& r : runs) {
    nlohmann::json j;
    j["index"] = r.index;
    j["file"] = r.file;
    j["status"] = r.ok ? "ok" : "failed";
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [name, value] : r.params) params[name] = value;
    j["params"] = params;
    if (r.ok) {
      j["stop_reason"] = r.stop_reason;
      j["samples"] = r.samples;
      ++succeeded;
    }
    if (!r.message.empty()) j["message"] = r.message;
    summary["runs"].push_back(j);
    if (!r.ok) err << "run " << r.index << " failed: " << r.message << "\n";
  }
  write_text_file((std::filesystem::path(dir) / "sweep.json").string(), summary.dump(2) + "\n");
  out << "runs: " << total << ", succeeded: " << succeeded << ", failed: " << total - succeeded
      << "\n";
  out << "summary: " << (std::filesystem::path(dir) / "sweep.json").string() << "\n";
  return succeeded > 0 ? kOk : kFailure;
}

} // namespace

CheckMax VerifyReport::worst() const {
  CheckMax w = law;
  for (const CheckMax* m : {&kinematic, &stored})
    if (m->value > w.value) w = *m;
  return w;
}

VerifyReport verify_curve(const SampledCurve& file_curve, const FamilySpec& family,
                          const Guards& guards) {
  const std::size_t n = file_curve.size();
  if (n < 3) throw InputError("verify needs at least 3 samples");
  if (file_curve.t.size() != n || file_curve.curvature.size() != n ||
      file_curve.first_integral.size() != n)
    throw InputError("curve columns have different lengths");
  SampledCurve c;
  c.family = family;
  c.t = file_curve.t;
  c.states = file_curve.states;
  compute_diagnostics(c, guards);

  VerifyReport r;
  r.samples = n;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double law = finite_or_inf(c.curvature[i].residual);
    bump(r.law, law, i);
    sum += law;

    const CurvatureReport& s = file_curve.curvature[i];
    const CurvatureReport& k = c.curvature[i];
    auto mismatch = [](double stored, double fresh) {
      if (std::isnan(stored) && std::isnan(fresh)) return 0.0;
      return finite_or_inf(stored - fresh);
    };
    double st = std::max({mismatch(s.kappa_target, k.kappa_target),
                          mismatch(s.kappa_actual, k.kappa_actual),
                          mismatch(s.residual, k.residual),
                          mismatch(file_curve.first_integral[i], c.first_integral[i])});
    bump(r.stored, st, i);

    if (i == 0) continue;
    const CurveState& p = c.states[i - 1];
    const CurveState& q = c.states[i];
    const double dt = c.t[i] - c.t[i - 1];
    double kin = kInf;
    if (dt > 0.0) {
      const double eu = q.u - p.u - 0.5 * dt * (p.du() + q.du());
      const double ev = q.v - p.v - 0.5 * dt * (p.dv() + q.dv());
      kin = finite_or_inf(std::hypot(eu, ev) / dt);
    }
    bump(r.kinematic, kin, i);
  }
  r.law_mean = sum / static_cast<double>(n);
  r.first_integral_drift = first_integral_drift(c);
  return r;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted-length catenaries in the plane, S^2 and H^2", "catforms"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  CommonSolveFlags solve_flags;
  std::string solve_out;
  std::optional<std::string> from_manifest;
  CLI::App* solve = app.add_subcommand("solve", "Integrate a catenary from initial data");
  solve_flags.add_to(solve);
  solve->add_option("--out", solve_out, "Output curve file")->required();
  solve->add_option("--from-manifest", from_manifest,
                    "Re-run the solve recorded in a manifest (other solve flags are ignored)");

  std::string verify_in, verify_family;
  double verify_alpha = 0.0;
  std::optional<double> verify_c;
  CLI::App* verify = app.add_subcommand("verify", "Recompute residuals of a curve file");
  verify->add_option("--in", verify_in, "Curve file (.csv or .json)")->required();
  verify->add_option("--family", verify_family, "Family of the law to check")->required();
  verify->add_option("--alpha", verify_alpha, "Exponent of the law to check")->required();
  verify->add_option("--c", verify_c, "Paper-mode constant (sphere, alpha = 1)");

  OracleFlags oracle_flags;
  CLI::App* oracle =
      app.add_subcommand("oracle", "Compare shooting with discrete energy minimization");
  oracle->add_option("--family", oracle_flags.family)->required();
  oracle->add_option("--alpha", oracle_flags.alpha)->required();
  oracle->add_option("--a", oracle_flags.a, "First endpoint U,V")->required();
  oracle->add_option("--b", oracle_flags.b, "Second endpoint U,V")->required();
  oracle->add_option("--nodes", oracle_flags.nodes, "Polyline vertices")->capture_default_str();
  oracle->add_option("--iters", oracle_flags.iters, "Minimizer iteration cap")
      ->capture_default_str();
  oracle->add_option("--tol", oracle_flags.tol, "Minimizer gradient tolerance")
      ->capture_default_str();
  oracle->add_option("--step", oracle_flags.step, "Shooting step")->capture_default_str();
  oracle->add_option("--length", oracle_flags.length, "Shooting arc-length budget")
      ->capture_default_str();

  SurfaceFlags surface_flags;
  CLI::App* surface = app.add_subcommand("surface", "Revolve a curve in S^3 or H^3");
  surface->add_option("--space", surface_flags.space, "s3 or h3")
      ->required()
      ->check(CLI::IsMember({"s3", "h3"}));
  surface->add_option("--in", surface_flags.in, "Curve file (.csv or .json)")->required();
  surface->add_option("--angular", surface_flags.angular, "Angular intervals")
      ->capture_default_str();
  surface->add_option("--export", surface_flags.export_path, "OBJ mesh output");
  surface->add_flag("--expect-minimal", surface_flags.expect_minimal,
                    "Fail unless max |H| is below the tolerance");
  surface->add_option("--family", surface_flags.family, "Override the manifest family");
  surface->add_option("--alpha", surface_flags.alpha, "Override the manifest exponent");
  surface->add_option("--c", surface_flags.c, "Override the paper-mode constant");

  CommonSolveFlags sweep_flags;
  std::vector<std::string> grids;
  std::optional<std::size_t> jobs;
  std::string sweep_dir;
  CLI::App* sweep = app.add_subcommand("sweep", "Solve over a parameter grid");
  sweep_flags.add_to(sweep);
  sweep->add_option("--grid", grids, "NAME=v1,v2,... or NAME=a:b:n; repeat for a product grid")
      ->required();
  sweep->add_option("--jobs", jobs, "Concurrent runs (default: CATFORMS_JOBS or 1)");
  sweep->add_option("--out", sweep_dir, "Output directory")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*solve) return cmd_solve(solve_flags, from_manifest, solve_out, out, err);
    if (*verify) return cmd_verify(verify_in, verify_family, verify_alpha, verify_c, out);
    if (*oracle) return cmd_oracle(oracle_flags, out, err);
    if (*surface) return cmd_surface(surface_flags, out);
    if (*sweep) return cmd_sweep(sweep_flags, grids, jobs, sweep_dir, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const ResampleError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const UnsupportedFamily& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kBadInput;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

} // namespace catforms::cli
