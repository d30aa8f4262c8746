#include "leglab/surfaces.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

namespace leglab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string make_label(std::string_view name, const ParamTable& params) {
  std::string out(name);
  if (params.empty()) return out;
  out += '(';
  bool first = true;
  for (const auto& [k, v] : params) {
    if (!first) out += ',';
    first = false;
    out += k + "=" + format_number(v);
  }
  out += ')';
  return out;
}

void check_domain(const ChartDomain& d) {
  if (!(d.x_max > d.x_min) || !(d.y_max > d.y_min) || !std::isfinite(d.width()) ||
      !std::isfinite(d.height())) {
    throw Error(ErrorCode::domain, "chart rectangle is degenerate");
  }
}

JVec3 calabi_map(const ImmersionSpec& s, const Jet2& t, const Jet2& u) {
  const double r1 = s.param("r1"), r2 = s.param("r2"), r3 = s.param("r3"),
               r4 = s.param("r4");
  const Jet2 th1 = (r2 / r1) * t + (r4 / r3) * u;
  const Jet2 th2 = (r2 / r1) * t - (r3 / r4) * u;
  const Jet2 th3 = (-r1 / r2) * t;
  return {{(r1 * r3) * exp(kI * th1), (r1 * r4) * exp(kI * th2),
           r2 * exp(kI * th3)}};
}

JVec3 mironov_map(const ImmersionSpec& s, const Jet2& x, const Jet2& y) {
  const double a = s.param("a"), b = s.param("b"), c = s.param("c");
  const Jet2 u = (c / 2.0) * ((a + b) + (b - a) * cos(2.0 * x));
  const Jet2 phi = std::sqrt(c / (a + c)) * sin(x);
  const Jet2 psi = std::sqrt(c / (b + c)) * cos(x);
  const Jet2 zeta = sqrt((a * b + u) / ((a + c) * (b + c)));
  return {{phi * exp((a * kI) * y), psi * exp((b * kI) * y),
           zeta * exp((-c * kI) * y)}};
}

JVec3 sphere_map(const Jet2& u, const Jet2& v) {
  const Jet2 cu = cos(u);
  return {{cu * cos(v), cu * sin(v), sin(u)}};
}

JVec3 expression_map(const ImmersionSpec& s, const Jet2& x, const Jet2& y) {
  const auto& e = *s.expressions();
  return {{eval_jet(e[0], x, y, s.params()), eval_jet(e[1], x, y, s.params()),
           eval_jet(e[2], x, y, s.params())}};
}

double wrap_periodic(double v, double lo, double period) {
  double r = std::fmod(v - lo, period);
  if (r < 0.0) r += period;
  // fmod of a negative value may round up to exactly one period.
  if (r >= period) r -= period;
  return lo + r;
}

}  // namespace

std::string_view surface_kind_name(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::calabi: return "calabi";
    case SurfaceKind::mironov: return "mironov";
    case SurfaceKind::geodesic_sphere: return "geodesic_sphere";
    case SurfaceKind::expression: return "expression";
  }
  return "unknown";
}

ImmersionSpec ImmersionSpec::with_swapped_chart() const {
  ImmersionSpec out = *this;
  out.swapped_ = !swapped_;
  out.domain_ = {domain_.y_min, domain_.y_max, domain_.x_min,
                 domain_.x_max, domain_.periodic_y, domain_.periodic_x};
  out.label_ = label_ + "[x<->y]";
  return out;
}

ImmersionSpec ImmersionSpec::with_domain(const ChartDomain& domain) const {
  check_domain(domain);
  ImmersionSpec out = *this;
  out.domain_ = domain;
  return out;
}

ImmersionSpec calabi(double r1, double r2, double r3, double r4) {
  if (r1 == 0.0 || r2 == 0.0 || r3 == 0.0 || r4 == 0.0) {
    throw Error(ErrorCode::param_constraint, "calabi: all r_i must be nonzero");
  }
  if (std::abs(r1 * r1 + r2 * r2 - 1.0) > 1e-12) {
    throw Error(ErrorCode::param_constraint,
                "calabi: r1^2 + r2^2 = 1 violated (got " +
                    format_number(r1 * r1 + r2 * r2) + ")");
  }
  if (std::abs(r3 * r3 + r4 * r4 - 1.0) > 1e-12) {
    throw Error(ErrorCode::param_constraint,
                "calabi: r3^2 + r4^2 = 1 violated (got " +
                    format_number(r3 * r3 + r4 * r4) + ")");
  }
  ImmersionSpec s;
  s.kind_ = SurfaceKind::calabi;
  s.params_ = {{"r1", r1}, {"r2", r2}, {"r3", r3}, {"r4", r4}};
  s.domain_ = {0.0, kTwoPi, 0.0, kTwoPi, true, true};
  s.label_ = make_label("calabi", s.params_);
  return s;
}

ImmersionSpec mironov(double a, double b, double c) {
  if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0)) {
    throw Error(ErrorCode::param_constraint, "mironov: a, b, c > 0 violated");
  }
  ImmersionSpec s;
  s.kind_ = SurfaceKind::mironov;
  s.params_ = {{"a", a}, {"b", b}, {"c", c}};
  s.domain_ = {0.0, kTwoPi, 0.0, kTwoPi, true, true};
  s.label_ = make_label("mironov", s.params_);
  return s;
}

ImmersionSpec geodesic_sphere() {
  ImmersionSpec s;
  s.kind_ = SurfaceKind::geodesic_sphere;
  s.domain_ = {-1.2, 1.2, 0.0, kTwoPi, false, true};
  s.label_ = "geodesic_sphere";
  return s;
}

ImmersionSpec from_expression(std::array<ExprAst, 3> asts, ParamTable params,
                              ChartDomain domain, std::string label) {
  Diagnostics all;
  for (const auto& ast : asts) {
    if (ast.empty()) {
      all.push_back({0, "missing coordinate expression"});
      continue;
    }
    for (auto& d : validate(ast, params)) all.push_back(std::move(d));
  }
  if (!all.empty()) throw ValidationError(std::move(all));
  check_domain(domain);
  ImmersionSpec s;
  s.kind_ = SurfaceKind::expression;
  s.params_ = std::move(params);
  s.domain_ = domain;
  s.label_ = std::move(label);
  s.exprs_ = std::make_shared<const std::array<ExprAst, 3>>(std::move(asts));
  return s;
}

ImmersionSpec make_surface(std::string_view name, const ParamTable& overrides) {
  auto pick = [&](const ParamTable& defaults) {
    ParamTable p = defaults;
    for (const auto& [k, v] : overrides) {
      if (!p.contains(k)) {
        throw Error(ErrorCode::param_constraint,
                    "unknown parameter '" + k + "' for surface " + std::string(name));
      }
      p[k] = v;
    }
    return p;
  };
  if (name == "calabi") {
    const auto p = pick({{"r1", 0.8}, {"r2", 0.6}, {"r3", 0.6}, {"r4", 0.8}});
    return calabi(p.at("r1"), p.at("r2"), p.at("r3"), p.at("r4"));
  }
  if (name == "mironov") {
    const auto p = pick({{"a", 1.0}, {"b", 2.0}, {"c", 1.0}});
    return mironov(p.at("a"), p.at("b"), p.at("c"));
  }
  if (name == "geodesic_sphere") {
    pick({});
    return geodesic_sphere();
  }
  throw Error(ErrorCode::unsupported_surface,
              "unknown surface '" + std::string(name) + "'");
}

std::pair<double, double> wrap_to_chart(const ImmersionSpec& spec, double x,
                                        double y) {
  const ChartDomain& d = spec.domain();
  if (d.periodic_x) {
    x = wrap_periodic(x, d.x_min, d.width());
  } else if (x < d.x_min || x > d.x_max) {
    throw Error(ErrorCode::domain, "x = " + format_number(x) + " outside chart");
  }
  if (d.periodic_y) {
    y = wrap_periodic(y, d.y_min, d.height());
  } else if (y < d.y_min || y > d.y_max) {
    throw Error(ErrorCode::domain, "y = " + format_number(y) + " outside chart");
  }
  return {x, y};
}

JVec3 evaluate_jet_local(const ImmersionSpec& spec, double x, double y,
                         int degree) {
  const ChartDomain& d = spec.domain();
  if (!d.periodic_x && (x < d.x_min || x > d.x_max)) {
    throw Error(ErrorCode::domain, "x = " + format_number(x) + " outside chart");
  }
  if (!d.periodic_y && (y < d.y_min || y > d.y_max)) {
    throw Error(ErrorCode::domain, "y = " + format_number(y) + " outside chart");
  }
  auto [xj, yj] = lift_point(x, y, degree);
  if (spec.chart_swapped()) std::swap(xj, yj);

  JVec3 f;
  switch (spec.kind()) {
    case SurfaceKind::calabi: f = calabi_map(spec, xj, yj); break;
    case SurfaceKind::mironov: f = mironov_map(spec, xj, yj); break;
    case SurfaceKind::geodesic_sphere: f = sphere_map(xj, yj); break;
    case SurfaceKind::expression: f = expression_map(spec, xj, yj); break;
  }
  const double n = norm(value(f));
  if (std::abs(n - 1.0) > 1e-10) {
    throw Error(ErrorCode::not_on_sphere,
                "|F| = " + format_number(n) + " at (" + format_number(x) + ", " +
                    format_number(y) + ")");
  }
  return f;
}

JVec3 evaluate_jet(const ImmersionSpec& spec, double x, double y, int degree) {
  const auto [wx, wy] = wrap_to_chart(spec, x, y);
  return evaluate_jet_local(spec, wx, wy, degree);
}

}  // namespace leglab
