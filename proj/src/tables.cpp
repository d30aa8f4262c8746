#include "leglab/tables.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "leglab/error.hpp"
#include "leglab/geometry.hpp"
#include "leglab/operators.hpp"

namespace leglab {

namespace {

struct RowSpec {
  std::string quantity;
  std::string formula;
  std::function<double(const PointEvaluation&)> expected;
  std::function<double(const PointEvaluation&)> computed;
};

std::vector<TableRow> sweep(const ImmersionSpec& spec,
                            const std::vector<std::array<double, 2>>& pts,
                            const std::vector<RowSpec>& specs) {
  std::vector<TableRow> rows;
  for (const auto& s : specs) rows.push_back({s.quantity, s.formula});
  std::vector<bool> seen(rows.size(), false);
  for (const auto& p : pts) {
    const PointEvaluation pe = evaluate_point(spec, p[0], p[1], {}, false);
    for (std::size_t r = 0; r < specs.size(); ++r) {
      const double e = specs[r].expected(pe);
      const double c = specs[r].computed(pe);
      const double d = std::abs(c - e);
      if (!seen[r] || d > rows[r].deviation) {
        rows[r].x = pe.frame.x;
        rows[r].y = pe.frame.y;
        rows[r].expected = e;
        rows[r].computed = c;
        rows[r].deviation = d;
        seen[r] = true;
      }
    }
  }
  return rows;
}

RowSpec constant_row(std::string q, std::string f, double v,
                     std::function<double(const PointEvaluation&)> c) {
  return {std::move(q), std::move(f), [v](const PointEvaluation&) { return v; },
          std::move(c)};
}

}  // namespace

std::vector<TableRow> calabi_table(const ImmersionSpec& spec, int nx, int ny) {
  if (spec.kind() != SurfaceKind::calabi) {
    throw Error(ErrorCode::unsupported_surface, "calabi table needs a calabi surface");
  }
  const double r1 = spec.param("r1"), r2 = spec.param("r2");
  const double r3 = spec.param("r3"), r4 = spec.param("r4");
  const double mu1 = 2 * r2 / r1 - r1 / r2;
  const double mu2 = (r4 / r3 - r3 / r4) / r1;
  const double nu1_tt = r2 / r1 - r1 / r2;
  const double nu2_ss = r1 * (r4 / r3 - r3 / r4);

  auto g = [](int i, int j) {
    return [i, j](const PointEvaluation& pe) { return pe.frame.metric.g[i][j]; };
  };
  auto an1 = [](int i, int j) {
    return [i, j](const PointEvaluation& pe) { return pe.frame.sf.A_nu1_chart[i][j]; };
  };
  auto an2 = [](int i, int j) {
    return [i, j](const PointEvaluation& pe) { return pe.frame.sf.A_nu2_chart[i][j]; };
  };
  const std::vector<RowSpec> specs = {
      constant_row("g_xx", "1", 1.0, g(0, 0)),
      constant_row("g_xy", "0", 0.0, g(0, 1)),
      constant_row("g_yy", "r1^2", r1 * r1, g(1, 1)),
      constant_row("mu_1", "2 r2/r1 - r1/r2", mu1,
                   [](const PointEvaluation& pe) { return pe.frame.sf.mu[0]; }),
      constant_row("mu_2", "(r4/r3 - r3/r4)/r1", mu2,
                   [](const PointEvaluation& pe) { return pe.frame.sf.mu[1]; }),
      constant_row("|H|^2", "mu_1^2 + mu_2^2", mu1 * mu1 + mu2 * mu2,
                   [](const PointEvaluation& pe) { return pe.frame.sf.H_norm_sq; }),
      constant_row("kappa (Gauss equation)", "0", 0.0,
                   [](const PointEvaluation& pe) { return pe.frame.curvature.kappa_gauss_eq; }),
      constant_row("kappa (Brioschi)", "0", 0.0,
                   [](const PointEvaluation& pe) { return pe.frame.curvature.kappa_intrinsic; }),
      constant_row("A^nu1_xx", "r2/r1 - r1/r2", nu1_tt, an1(0, 0)),
      constant_row("A^nu1_xy", "0", 0.0, an1(0, 1)),
      constant_row("A^nu1_yy", "r1 r2", r1 * r2, an1(1, 1)),
      constant_row("A^nu2_xx", "0", 0.0, an2(0, 0)),
      constant_row("A^nu2_xy", "r2", r2, an2(0, 1)),
      constant_row("A^nu2_yy", "r1 (r4/r3 - r3/r4)", nu2_ss, an2(1, 1)),
      constant_row("max |A^R|", "0", 0.0,
                   [](const PointEvaluation& pe) {
                     const Mat2& a = pe.frame.sf.A_R;
                     return std::max({std::abs(a[0][0]), std::abs(a[0][1]), std::abs(a[1][1])});
                   }),
      constant_row("Div(JH)", "0", 0.0,
                   [](const PointEvaluation& pe) { return pe.div_JH; }),
  };
  return sweep(spec, grid_points(spec, nx, ny), specs);
}

std::vector<TableRow> mironov_table(const ImmersionSpec& spec) {
  if (spec.kind() != SurfaceKind::mironov) {
    throw Error(ErrorCode::unsupported_surface, "mironov table needs a mironov surface");
  }
  const double a = spec.param("a"), b = spec.param("b"), c = spec.param("c");
  const double s = a + b - c;
  auto u = [=](double x) { return c * (a + b + (b - a) * std::cos(2 * x)) / 2; };
  auto ux = [=](double x) { return -c * (b - a) * std::sin(2 * x); };
  auto e2p = [=](double x) { return u(x) / (a * b + u(x)); };

  auto at = [](auto f) {
    return [f](const PointEvaluation& pe) { return f(pe.frame.x); };
  };
  auto h_comp = [](int k) {
    return [k](const PointEvaluation& pe) {
      const CVec3& Fk = k == 0 ? pe.frame.Fx : pe.frame.Fy;
      return real_inner(pe.frame.sf.H, apply_J(Fk));
    };
  };
  auto zero = [](const PointEvaluation&) { return 0.0; };
  const std::vector<RowSpec> specs = {
      {"g_xx", "u/(ab+u)", at(e2p),
       [](const PointEvaluation& pe) { return pe.frame.metric.g[0][0]; }},
      {"g_xy", "0", zero,
       [](const PointEvaluation& pe) { return pe.frame.metric.g[0][1]; }},
      {"g_yy", "u", at(u),
       [](const PointEvaluation& pe) { return pe.frame.metric.g[1][1]; }},
      {"A^{iF_x}_xx", "0", zero,
       [](const PointEvaluation& pe) { return pe.frame.sf.A_iFx[0][0]; }},
      {"A^{iF_x}_xy", "c (1 - e^{2p})", at([=](double x) { return c * (1 - e2p(x)); }),
       [](const PointEvaluation& pe) { return pe.frame.sf.A_iFx[0][1]; }},
      {"A^{iF_x}_yy", "0", zero,
       [](const PointEvaluation& pe) { return pe.frame.sf.A_iFx[1][1]; }},
      {"A^{iF_y}_xx", "c (1 - e^{2p})", at([=](double x) { return c * (1 - e2p(x)); }),
       [](const PointEvaluation& pe) { return pe.frame.sf.A_iFy[0][0]; }},
      {"A^{iF_y}_xy", "0", zero,
       [](const PointEvaluation& pe) { return pe.frame.sf.A_iFy[0][1]; }},
      {"A^{iF_y}_yy", "(a+b-c) e^{2q} - abc", at([=](double x) { return s * u(x) - a * b * c; }),
       [](const PointEvaluation& pe) { return pe.frame.sf.A_iFy[1][1]; }},
      {"<H, iF_x>", "0", zero, h_comp(0)},
      {"<H, iF_y>", "a+b-c", [=](const PointEvaluation&) { return s; }, h_comp(1)},
      {"(JH)^x", "0", zero, [](const PointEvaluation& pe) { return pe.a[0]; }},
      {"(JH)^y", "-(a+b-c)/u", at([=](double x) { return -s / u(x); }),
       [](const PointEvaluation& pe) { return pe.a[1]; }},
      {"nabla_x (JH)^y", "(a+b-c) u_x / (2 u^2)",
       at([=](double x) { return s * ux(x) / (2 * u(x) * u(x)); }),
       [](const PointEvaluation& pe) { return pe.nabla_JH[0][1]; }},
      {"nabla_y (JH)^x", "(ab+u)(a+b-c) u_x / (2 u^2)",
       at([=](double x) { return (a * b + u(x)) * s * ux(x) / (2 * u(x) * u(x)); }),
       [](const PointEvaluation& pe) { return pe.nabla_JH[1][0]; }},
      {"Div(JH)", "0", zero, [](const PointEvaluation& pe) { return pe.div_JH; }},
      {"sum <B(e_i, nabla_{e_i} JH), H>", "0", zero,
       [](const PointEvaluation& pe) { return pe.obstruction; }},
  };
  std::vector<std::array<double, 2>> pts;
  for (double y : {0.0, 1.0}) {
    for (double x : {0.0, std::numbers::pi / 6, std::numbers::pi / 4}) {
      pts.push_back({x, y});
    }
  }
  return sweep(spec, pts, specs);
}

std::vector<TableRow> closed_form_table(const ImmersionSpec& spec, int nx,
                                        int ny) {
  switch (spec.kind()) {
    case SurfaceKind::calabi:
      return calabi_table(spec, nx, ny);
    case SurfaceKind::mironov:
      return mironov_table(spec);
    default:
      throw Error(ErrorCode::unsupported_surface,
                  "no closed-form table for '" + spec.label() + "'");
  }
}

}  // namespace leglab
