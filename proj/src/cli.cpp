#include "leglab/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <optional>

#include <CLI11.hpp>

#include "leglab/config.hpp"
#include "leglab/error.hpp"
#include "leglab/operators.hpp"
#include "leglab/report.hpp"
#include "leglab/tables.hpp"

namespace leglab {

namespace {

constexpr double kTableTolerance = 1e-10;

struct Flags {
  std::string command;
  std::optional<std::string> surface, params, expr_file, config, grid, format;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
};

double tolerance_scale_from_env() {
  const char* raw = std::getenv("LEGLAB_TOLERANCE_SCALE");
  if (raw == nullptr || *raw == '\0') return 1.0;
  const std::string_view s(raw);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !(v > 0.0) ||
      !std::isfinite(v)) {
    throw Error(ErrorCode::config,
                "LEGLAB_TOLERANCE_SCALE must be a positive number, got '" +
                    std::string(s) + "'");
  }
  return v;
}

RunConfig resolve(const Flags& f) {
  RunConfig cfg;
  if (f.config) apply_config_file(cfg, *f.config);
  if (f.surface) {
    cfg.surface = *f.surface;
    cfg.expr_file.reset();
  }
  if (f.params) cfg.params = parse_param_list(*f.params);
  if (f.expr_file) cfg.expr_file = *f.expr_file;
  if (f.grid) cfg.grid = parse_grid(*f.grid);
  if (f.format) cfg.format = *f.format == "json" ? OutputFormat::json : OutputFormat::text;
  if (f.seed) cfg.seed = *f.seed;
  if (f.workers) cfg.workers = *f.workers;
  for (const auto& [name, tol] : cfg.tolerances) {
    if (name != "table" && !find_check(name)) {
      throw Error(ErrorCode::config, "unknown tolerance name '" + name + "'");
    }
  }
  return cfg;
}

struct Suite {
  ResidualReport report;
  std::vector<CheckOutcome> checks;
};

Suite run_suite(const ImmersionSpec& spec, const RunConfig& cfg, int nx,
                int ny, double scale) {
  auto pts = grid_points(spec, nx, ny);
  const auto extra = seeded_points(spec, cfg.sample_points, cfg.seed);
  pts.insert(pts.end(), extra.begin(), extra.end());
  SuiteOptions so;
  so.eval.reeb = cfg.reeb;
  so.workers = cfg.workers;
  Suite s{identity_suite(spec, pts, so), {}};
  s.checks = judge(s.report, {cfg.tolerances, scale});
  return s;
}

const CheckOutcome& outcome(const std::vector<CheckOutcome>& v, std::string_view name) {
  for (const auto& c : v) {
    if (c.name == name) return c;
  }
  throw Error(ErrorCode::config, "no check named " + std::string(name));
}

void emit(std::ostream& out, const RunConfig& cfg, const Json& j,
          const std::string& text) {
  if (cfg.format == OutputFormat::json) {
    out << j.dump(2) << "\n";
  } else {
    out << text;
  }
}

int cmd_verify(const ImmersionSpec& spec, const RunConfig& cfg, double scale,
               std::ostream& out) {
  const GridSpec g = cfg.grid.value_or(GridSpec{32, 32});
  const Suite s = run_suite(spec, cfg, g.nx, g.ny, scale);
  std::size_t passed = 0, failed = 0, skipped = 0, info = 0;
  for (const auto& c : s.checks) {
    switch (c.status) {
      case CheckStatus::pass: ++passed; break;
      case CheckStatus::fail: ++failed; break;
      case CheckStatus::skip: ++skipped; break;
      case CheckStatus::info: ++info; break;
    }
  }
  const std::size_t evaluated = s.report.evaluated_points();
  const bool ok = failed == 0 && evaluated > 0;

  const RunHeader h{"verify", &spec, g.nx, g.ny, cfg.sample_points, cfg.seed, scale, cfg.reeb};
  Json j = header_json(h);
  j["checks"] = checks_json(s.checks);
  j["aggregates"] = {{"checks", s.checks.size()},
                     {"passed", passed},
                     {"failed", failed},
                     {"skipped", skipped},
                     {"informational", info},
                     {"points", s.report.points.size()},
                     {"evaluated_points", evaluated}};
  j["skipped_points"] = skipped_json(s.report);
  j["status"] = ok ? "pass" : "fail";

  std::ostringstream t;
  t << header_text(h) << "\n" << checks_text(s.checks) << "\n";
  t << passed << " passed, " << failed << " failed, " << skipped << " skipped, "
    << info << " informational; " << evaluated << "/" << s.report.points.size()
    << " points evaluated\n";
  std::size_t shown = 0;
  const std::size_t not_evaluated = s.report.points.size() - evaluated;
  for (std::size_t i = 0; i < s.report.points.size() && shown < 5; ++i) {
    if (s.report.point_errors[i].empty()) continue;
    t << "  skipped (" << s.report.points[i][0] << ", " << s.report.points[i][1]
      << "): " << s.report.point_errors[i] << "\n";
    ++shown;
  }
  if (not_evaluated > shown) t << "  ... " << not_evaluated - shown << " more skipped points\n";
  if (evaluated == 0) t << "no point could be evaluated\n";
  t << "status: " << (ok ? "pass" : "fail") << "\n";
  emit(out, cfg, j, t.str());
  return ok ? 0 : 1;
}

int cmd_table(const ImmersionSpec& spec, const RunConfig& cfg, double scale,
              std::ostream& out) {
  const GridSpec g = cfg.grid.value_or(GridSpec{32, 32});
  const auto rows = closed_form_table(spec, g.nx, g.ny);
  const auto ov = cfg.tolerances.find("table");
  const double tol = (ov != cfg.tolerances.end() ? ov->second : kTableTolerance) * scale;
  bool ok = true;
  for (const auto& r : rows) ok = ok && r.deviation <= tol;

  const bool calabi_grid = spec.kind() == SurfaceKind::calabi;
  const RunHeader h{"table", &spec, calabi_grid ? g.nx : 3, calabi_grid ? g.ny : 2, 0,
                    cfg.seed, scale, cfg.reeb};
  Json j = header_json(h);
  j["checks"] = table_json(rows, tol);
  j["status"] = ok ? "pass" : "fail";
  std::ostringstream t;
  t << header_text(h);
  if (!calabi_grid) t << "points    x in {0, pi/6, pi/4}, y in {0, 1}\n";
  t << "\n" << table_text(rows, tol) << "status: " << (ok ? "pass" : "fail") << "\n";
  emit(out, cfg, j, t.str());
  return ok ? 0 : 1;
}

int cmd_energy(const ImmersionSpec& spec, const RunConfig& cfg, double scale,
               std::ostream& out) {
  const GridSpec g = cfg.grid.value_or(GridSpec{64, 64});
  const EnergyResult e = willmore_energy(spec, g.nx, g.ny, cfg.workers);
  const RunHeader h{"energy", &spec, g.nx, g.ny, 0, cfg.seed, scale, cfg.reeb};
  Json j = header_json(h);
  j["checks"] = Json::array();
  j["area"] = e.area;
  j["energy"] = e.energy;
  j["integrand"] = "(|H|^2/4 + 1) sqrt(det g)";
  j["status"] = "pass";
  std::ostringstream t;
  t << header_text(h) << "\n";
  char buf[96];
  std::snprintf(buf, sizeof buf, "area   %.15g\nenergy %.15g\n", e.area, e.energy);
  t << buf << "energy = integral of (|H|^2/4 + 1) dA over the chart rectangle\n";
  emit(out, cfg, j, t.str());
  return 0;
}

int cmd_classify(const ImmersionSpec& spec, const RunConfig& cfg, double scale,
                 std::ostream& out) {
  const GridSpec g = cfg.grid.value_or(GridSpec{32, 32});
  const Suite s = run_suite(spec, cfg, g.nx, g.ny, scale);
  auto label = [&](std::string property, std::string_view check, std::string evidence,
                   bool strict) {
    const CheckOutcome& c = outcome(s.checks, check);
    const double thr = c.tolerance;
    const bool holds = c.aggregates.count > 0 && std::isfinite(c.value) &&
                       (strict ? c.value < thr : c.value <= thr);
    return ClassLabel{std::move(property), holds, std::move(evidence), c.value, thr};
  };
  const std::vector<ClassLabel> labels = {
      label("Legendrian", "legendrian_defect", "max legendrian defect", false),
      label("minimal", "mean_curvature_norm", "max |H|", true),
      label("csL", "csl", "max |Div(JH)|", false),
      label("Willmore-Legendrian", "willmore_legendrian", "max Willmore-Legendrian residual", false),
      label("csL-Willmore", "csl_willmore", "max csL-Willmore residual", false),
  };
  const RunHeader h{"classify", &spec, g.nx, g.ny, cfg.sample_points, cfg.seed, scale, cfg.reeb};
  Json j = header_json(h);
  j["classification"] = classify_json(labels);
  j["checks"] = checks_json(s.checks);
  j["skipped_points"] = skipped_json(s.report);
  j["status"] = "pass";
  std::ostringstream t;
  t << header_text(h) << "\n" << classify_text(labels);
  t << "(" << s.report.evaluated_points() << "/" << s.report.points.size()
    << " points evaluated)\n";
  emit(out, cfg, j, t.str());
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Legendrian surface verification toolkit", "legendrian-lab"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--surface", f.surface, "calabi | mironov | geodesic_sphere");
  app.add_option("--params", f.params, "parameter overrides k=v,...");
  app.add_option("--expr-file", f.expr_file, "surface expression file");
  app.add_option("--config", f.config, "config file");
  app.add_option("--grid", f.grid, "grid size NXxNY");
  app.add_option("--format", f.format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", f.seed, "seed for sample points");
  app.add_option("--workers", f.workers, "worker threads")->check(CLI::PositiveNumber);
  for (const char* name : {"verify", "table", "energy", "classify"}) {
    app.add_subcommand(name, "")->callback([&f, name] { f.command = name; });
  }
  app.get_subcommand("verify")->description("run every residual check on the grid");
  app.get_subcommand("table")->description("closed-form table of the calabi or mironov family");
  app.get_subcommand("energy")->description("Willmore energy and area per chart rectangle");
  app.get_subcommand("classify")->description("label the surface by its residual maxima");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const double scale = tolerance_scale_from_env();
    const RunConfig cfg = resolve(f);
    std::string diagnostic;
    std::optional<ImmersionSpec> spec;
    try {
      spec = build_surface(cfg, &diagnostic);
    } catch (const Error&) {
      if (!diagnostic.empty()) err << diagnostic << "\n";
      throw;
    }
    if (f.command == "verify") return cmd_verify(*spec, cfg, scale, out);
    if (f.command == "table") return cmd_table(*spec, cfg, scale, out);
    if (f.command == "energy") return cmd_energy(*spec, cfg, scale, out);
    return cmd_classify(*spec, cfg, scale, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace leglab
