#include "leglab/report.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace leglab {

std::string_view status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skip: return "skip";
    case CheckStatus::info: return "info";
  }
  return "?";
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::vector<CheckOutcome> judge(const ResidualReport& report,
                                const JudgeOptions& opts) {
  std::vector<CheckOutcome> out;
  double max_H = 0.0;
  for (const auto& c : report.checks) {
    if (c.spec.name == "mean_curvature_norm") max_H = c.aggregates().max;
  }
  for (const auto& c : report.checks) {
    CheckOutcome o;
    o.name = c.spec.name;
    o.formula = c.spec.formula;
    o.aggregates = c.aggregates();
    o.value = o.aggregates.max;
    const auto ov = opts.overrides.find(c.spec.name);
    o.tolerance = (ov != opts.overrides.end() ? ov->second : c.spec.tolerance) * opts.scale;
    if (o.aggregates.count == 0) {
      o.status = CheckStatus::skip;
    } else if (c.spec.name == "willmore_legendrian") {
      const bool minimal = max_H < kMinimalThreshold * opts.scale;
      const bool consistent = minimal ? o.value < o.tolerance : o.value >= o.tolerance;
      o.status = consistent && std::isfinite(o.value) ? CheckStatus::pass : CheckStatus::fail;
    } else if (c.spec.scope == CheckScope::informational) {
      o.status = CheckStatus::info;
    } else {
      o.status = std::isfinite(o.value) && o.value <= o.tolerance ? CheckStatus::pass
                                                                 : CheckStatus::fail;
    }
    out.push_back(std::move(o));
  }
  return out;
}

namespace {

const char* kNormsNote =
    "vector residuals: Euclidean norm in C^3 = R^6; tangent vectors: induced "
    "metric; scalars: absolute value";

Json complex_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json cvec_json(const CVec3& v) {
  Json a = Json::array();
  for (const auto& z : v.c) a.push_back(complex_json(z));
  return a;
}

Json mat_json(const Mat2& m) {
  return Json::array({Json::array({m[0][0], m[0][1]}), Json::array({m[1][0], m[1][1]})});
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

}  // namespace

Json header_json(const RunHeader& h) {
  const ImmersionSpec& s = *h.surface;
  const ChartDomain& d = s.domain();
  Json j;
  j["schema_version"] = 1;
  j["command"] = h.command;
  j["surface"] = s.label();
  j["kind"] = surface_kind_name(s.kind());
  Json params = Json::object();
  for (const auto& [k, v] : s.params()) params[k] = v;
  j["params"] = params;
  j["grid"] = {{"nx", h.nx},
               {"ny", h.ny},
               {"x_range", Json::array({d.x_min, d.x_max})},
               {"y_range", Json::array({d.y_min, d.y_max})},
               {"periodic", Json::array({d.periodic_x, d.periodic_y})},
               {"sample_points", h.sample_points},
               {"seed", h.seed},
               {"label", "per chart rectangle"}};
  j["norms"] = kNormsNote;
  j["tolerance_scale"] = h.tolerance_scale;
  j["reeb_sign"] = h.reeb == ReebSign::minus_i ? "-iF" : "+iF";
  return j;
}

Json checks_json(const std::vector<CheckOutcome>& checks) {
  Json a = Json::array();
  for (const auto& c : checks) {
    a.push_back({{"name", c.name},
                 {"paper_ref", c.formula},
                 {"value", c.value},
                 {"tolerance", c.tolerance},
                 {"status", status_name(c.status)},
                 {"aggregates",
                  {{"max", c.aggregates.max},
                   {"rms", c.aggregates.rms},
                   {"count", c.aggregates.count},
                   {"skipped", c.aggregates.skipped}}}});
  }
  return a;
}

Json skipped_json(const ResidualReport& report) {
  Json a = Json::array();
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    if (report.point_errors[i].empty()) continue;
    a.push_back({{"x", report.points[i][0]},
                 {"y", report.points[i][1]},
                 {"reason", report.point_errors[i]}});
  }
  return a;
}

Json table_json(const std::vector<TableRow>& rows, double tolerance) {
  Json a = Json::array();
  for (const auto& r : rows) {
    a.push_back({{"name", r.quantity},
                 {"paper_ref", r.formula},
                 {"value", r.deviation},
                 {"tolerance", tolerance},
                 {"status", r.deviation <= tolerance ? "pass" : "fail"},
                 {"at", Json::array({r.x, r.y})},
                 {"expected", r.expected},
                 {"computed", r.computed}});
  }
  return a;
}

Json classify_json(const std::vector<ClassLabel>& labels) {
  Json a = Json::array();
  for (const auto& l : labels) {
    a.push_back({{"property", l.property},
                 {"holds", l.holds},
                 {"evidence", l.evidence},
                 {"value", l.value},
                 {"threshold", l.threshold}});
  }
  return a;
}

Json point_frame_json(const PointFrame& pf) {
  const SecondFundamental& sf = pf.sf;
  return {{"x", pf.x},
          {"y", pf.y},
          {"F", cvec_json(pf.F)},
          {"F_x", cvec_json(pf.Fx)},
          {"F_y", cvec_json(pf.Fy)},
          {"metric", mat_json(pf.metric.g)},
          {"mu", Json::array({sf.mu[0], sf.mu[1]})},
          {"H", cvec_json(sf.H)},
          {"A_nu1", mat_json(sf.A_nu1)},
          {"A_nu2", mat_json(sf.A_nu2)},
          {"A_R", mat_json(sf.A_R)},
          {"A_iFx", mat_json(sf.A_iFx)},
          {"A_iFy", mat_json(sf.A_iFy)},
          {"A_nu1_chart", mat_json(sf.A_nu1_chart)},
          {"A_nu2_chart", mat_json(sf.A_nu2_chart)},
          {"kappa", pf.curvature.kappa_intrinsic},
          {"kappa_gauss_equation", pf.curvature.kappa_gauss_eq},
          {"legendrian_defect", pf.legendrian_defect},
          {"sigma_symmetry", pf.sigma_symmetry},
          {"reeb_orthogonality", pf.reeb_orthogonality}};
}

std::string header_text(const RunHeader& h) {
  const ImmersionSpec& s = *h.surface;
  const ChartDomain& d = s.domain();
  std::ostringstream o;
  o << "legendrian-lab " << h.command << "\n";
  o << "surface   " << s.label() << " (" << surface_kind_name(s.kind()) << ")\n";
  o << "chart     [" << d.x_min << ", " << d.x_max << "] x [" << d.y_min << ", "
    << d.y_max << "], periodic " << (d.periodic_x ? "yes" : "no") << "/"
    << (d.periodic_y ? "yes" : "no") << ", per chart rectangle\n";
  o << "grid      " << h.nx << "x" << h.ny;
  if (h.sample_points > 0) o << " + " << h.sample_points << " seeded points (seed " << h.seed << ")";
  o << "\n";
  o << "reeb      R = " << (h.reeb == ReebSign::minus_i ? "-iF" : "+iF") << "\n";
  o << "norms     " << kNormsNote << "\n";
  if (h.tolerance_scale != 1.0) o << "tolerance scale " << h.tolerance_scale << "\n";
  return o.str();
}

std::string checks_text(const std::vector<CheckOutcome>& checks) {
  std::ostringstream o;
  o << pad("check", 28) << pad("max", 12) << pad("rms", 12) << pad("tol", 12)
    << pad("points", 10) << "status\n";
  for (const auto& c : checks) {
    o << pad(c.name, 28) << pad(sci(c.aggregates.max), 12)
      << pad(sci(c.aggregates.rms), 12) << pad(sci(c.tolerance), 12)
      << pad(std::to_string(c.aggregates.count) + "/" +
                 std::to_string(c.aggregates.count + c.aggregates.skipped),
             10)
      << status_name(c.status) << "\n";
  }
  return o.str();
}

std::string table_text(const std::vector<TableRow>& rows, double tolerance) {
  std::ostringstream o;
  o << pad("quantity", 34) << pad("closed form", 30) << pad("expected", 12)
    << pad("computed", 12) << pad("max dev", 12) << "status\n";
  for (const auto& r : rows) {
    o << pad(r.quantity, 34) << pad(r.formula, 30) << pad(sci(r.expected), 12)
      << pad(sci(r.computed), 12) << pad(sci(r.deviation), 12)
      << (r.deviation <= tolerance ? "pass" : "fail") << "\n";
  }
  o << "tolerance " << sci(tolerance) << "\n";
  return o.str();
}

std::string classify_text(const std::vector<ClassLabel>& labels) {
  std::ostringstream o;
  for (const auto& l : labels) {
    o << pad(l.property, 22) << (l.holds ? "✓" : "✗") << "  "
      << l.evidence << " = " << sci(l.value) << " (threshold " << sci(l.threshold)
      << ")\n";
  }
  return o.str();
}

}  // namespace leglab
