#include <doctest.h>

#include <cmath>
#include <numbers>

#include "leglab/error.hpp"
#include "leglab/geometry.hpp"
#include "leglab/operators.hpp"
#include "support.hpp"

using namespace leglab;
using namespace testsupport;

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

std::array<double, 2> interior_point(const ImmersionSpec& s) {
  const ChartDomain& d = s.domain();
  const double mx = d.periodic_x ? 0 : 0.05 * d.width();
  const double my = d.periodic_y ? 0 : 0.05 * d.height();
  return {uniform(d.x_min + mx, d.x_max - mx), uniform(d.y_min + my, d.y_max - my)};
}

// |W| of a Calabi torus from the closed-form shape operators in the
// orthonormal frame (e1, e2, nu1 = i e1, nu2 = i e2).
double calabi_W_norm(double r1, double r2, double r3, double r4) {
  const double a1[2][2] = {{r2 / r1 - r1 / r2, 0}, {0, r2 / r1}};
  const double a2[2][2] = {{0, r2 / r1}, {r2 / r1, (r4 / r3 - r3 / r4) / r1}};
  const double mu[2] = {2 * r2 / r1 - r1 / r2, (r4 / r3 - r3 / r4) / r1};
  const double h2 = mu[0] * mu[0] + mu[1] * mu[1];
  double w[2] = {0, 0};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      w[0] += mu[a] * mu[b] * a1[a][b];
      w[1] += mu[a] * mu[b] * a2[a][b];
    }
  }
  w[0] = 0.5 * (w[0] - 0.5 * h2 * mu[0]);
  w[1] = 0.5 * (w[1] - 0.5 * h2 * mu[1]);
  return std::hypot(w[0], w[1]);
}

ScalarField log_H(const ImmersionSpec& s) {
  return [s](double x, double y) {
    const SurfaceJets sj = surface_jets(evaluate_jet_local(s, x, y, 2));
    return 0.5 * std::log(real_inner(value(sj.H), value(sj.H)));
  };
}

double kappa(const ImmersionSpec& s, double x, double y) {
  return point_report(s, x, y).curvature.kappa_intrinsic;
}

}  // namespace

TEST_SUITE("operators") {

TEST_CASE("JH components") {
  const auto c = field_JH(calabi(), 0.3, 1.7);
  // chart components of -mu1 e1 - mu2 e2 with e2 = F_y / 0.8
  CHECK(std::abs(c[0] + 1.0 / 6.0) < 1e-13);
  CHECK(std::abs(c[1] + 35.0 / 48.0 / 0.8) < 1e-13);

  for (int n = 0; n < 10; ++n) {
    const double x = uniform(0, kTau), y = uniform(0, kTau);
    const double u = (3 + std::cos(2 * x)) / 2;
    const auto m = field_JH(mironov(1, 2, 1), x, y);
    CHECK(std::abs(m[0]) < 1e-12);
    CHECK(std::abs(m[1] + 2.0 / u) < 1e-12);
  }
  for (const auto& m : catalog_members()) {
    if (!m.minimal) continue;
    const auto p = interior_point(m.spec);
    const auto z = field_JH(m.spec, p[0], p[1]);
    CHECK(std::hypot(z[0], z[1]) < 1e-10);
  }
}

TEST_CASE("divergence of JH") {
  const TangentField calabi_jh = jh_field(calabi());
  const TangentField mironov_jh = jh_field(mironov());
  for (int n = 0; n < 10; ++n) {
    CHECK(std::abs(divergence(calabi(), calabi_jh, uniform(0, kTau), uniform(0, kTau))) < 1e-9);
    CHECK(std::abs(divergence(mironov(), mironov_jh, uniform(0, kTau), uniform(0, kTau))) <
          1e-7);
  }
}

TEST_CASE("gradient and Laplacian of constants") {
  const ScalarField one = [](double, double) { return 1.0; };
  for (const auto& m : catalog_members()) {
    const auto p = interior_point(m.spec);
    const auto g = gradient(m.spec, one, p[0], p[1]);
    const TangentField grad = [&](double x, double y) { return gradient(m.spec, one, x, y); };
    CHECK(std::abs(divergence(m.spec, grad, p[0], p[1])) < 1e-12);
    CHECK(std::abs(g[0]) + std::abs(g[1]) < 1e-12);
    CHECK(std::abs(laplace_beltrami(m.spec, one, p[0], p[1])) < 1e-12);
  }
}

TEST_CASE("Laplacian of a coordinate function on the sphere") {
  // On the unit sphere, Re F_3 = sin u is a first eigenfunction: Lap f = -2 f.
  const ImmersionSpec s = geodesic_sphere();
  const ScalarField f = [](double u, double) { return std::sin(u); };
  for (int n = 0; n < 10; ++n) {
    const double u = uniform(-1.0, 1.0), v = uniform(0, kTau);
    CHECK(std::abs(laplace_beltrami(s, f, u, v) + 2 * std::sin(u)) < 1e-8);
  }
}

TEST_CASE("log |H| is harmonic up to curvature") {
  const ImmersionSpec m = mironov(1, 2, 1);
  for (int n = 0; n < 10; ++n) {
    const double x = uniform(0, kTau), y = uniform(0, kTau);
    CHECK(std::abs(laplace_beltrami(m, log_H(m), x, y) - kappa(m, x, y)) < 1e-5);
  }
  const ImmersionSpec c = calabi();
  for (int n = 0; n < 5; ++n) {
    const double x = uniform(0, kTau), y = uniform(0, kTau);
    CHECK(std::abs(laplace_beltrami(c, log_H(c), x, y)) < 1e-8);
    CHECK(std::abs(kappa(c, x, y)) < 1e-8);
  }
}

TEST_CASE("covariant derivative") {
  const ImmersionSpec c = calabi();
  for (int n = 0; n < 5; ++n) {
    const double x = uniform(0, kTau), y = uniform(0, kTau);
    const NablaJH pack = nabla_JH_pack(c, x, y);
    CHECK(pack.norm_sq < 1e-16);
    const Mat2 fd = covariant_derivative(c, jh_field(c), x, y);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(std::abs(fd[i][j]) < 1e-8);
    const TangentField dx_field = [](double, double) { return std::array{1.0, 0.0}; };
    const Mat2 z = covariant_derivative(c, dx_field, x, y);
    CHECK(std::abs(z[0][0]) + std::abs(z[0][1]) + std::abs(z[1][0]) + std::abs(z[1][1]) < 1e-12);
  }
  // Mironov: nabla_x (JH)^y = (a+b-c) u_x / (2 u^2)
  for (int n = 0; n < 10; ++n) {
    const double x = uniform(0, kTau), y = uniform(0, kTau);
    const double u = (3 + std::cos(2 * x)) / 2, ux = -std::sin(2 * x);
    const NablaJH pack = nabla_JH_pack(mironov(), x, y);
    CHECK(std::abs(pack.nabla[0][1] - 2 * ux / (2 * u * u)) < 1e-12);
    CHECK(std::abs(pack.nabla[1][0] - (2 + u) * 2 * ux / (2 * u * u)) < 1e-12);
    CHECK(pack.norm_sq >= 0.0);
    const Mat2 fd = covariant_derivative(mironov(), jh_field(mironov()), x, y);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(std::abs(fd[i][j] - pack.nabla[i][j]) < 1e-8);
  }
}

TEST_CASE("symmetric part of nabla JH") {
  // d(omega) = 0 for omega = <JH, .> means g(nabla_i JH, d_j) is symmetric.
  const ImmersionSpec j = join_surface();
  for (int n = 0; n < 10; ++n) {
    const auto p = interior_point(j);
    const PointFrame pf = point_report(j, p[0], p[1]);
    const NablaJH pack = nabla_JH_pack(j, p[0], p[1]);
    double low[2][2];
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        low[a][b] = pack.nabla[a][0] * pf.metric.g[0][b] + pack.nabla[a][1] * pf.metric.g[1][b];
    CHECK(std::abs(low[0][1] - low[1][0]) < 1e-10);
    CHECK(pack.norm_sq >= 0.0);
  }
}

TEST_CASE("Willmore operator") {
  for (const auto& m : catalog_members()) {
    if (!m.minimal) continue;
    const auto p = interior_point(m.spec);
    CHECK(norm(willmore_operator(m.spec, p[0], p[1])) < 1e-8);
  }
  const double expect = calabi_W_norm(0.8, 0.6, 0.6, 0.8);
  CHECK(expect > 0.05);
  for (int n = 0; n < 10; ++n) {
    CHECK(std::abs(norm(willmore_operator(calabi(), uniform(0, kTau), uniform(0, kTau))) -
                   expect) < 1e-12);
  }
  for (const auto& spec : {mironov(), join_surface()}) {
    for (int n = 0; n < 10; ++n) {
      const auto p = interior_point(spec);
      const PointFrame pf = point_report(spec, p[0], p[1]);
      const CVec3 W = willmore_operator(spec, p[0], p[1]);
      const PointEvaluation pe = evaluate_point(spec, p[0], p[1], {}, false);
      CHECK(std::abs(real_inner(W, pf.frame.R) + pe.div_JH) < 1e-10);
    }
  }
}

TEST_CASE("Willmore-Legendrian residual") {
  for (const auto& m : catalog_members()) {
    const auto p = interior_point(m.spec);
    const double r = residual_willmore_legendrian(m.spec, p[0], p[1]);
    if (m.minimal) {
      CHECK(r < 1e-8);
    } else {
      CHECK(r > 0.01);
    }
  }
  CHECK(residual_willmore_legendrian(calabi(), 1, 1) > 0.1);
}

TEST_CASE("Willmore-Legendrian residual on Mironov surfaces") {
  // H = k iF_y / u and B(F_y, F_y) = (k u - abc) iF_y / u with k = a + b - c,
  // so the braces reduce to (k^2 (k u - abc) / u^3 - k^3 / (2 u^2)) iF_y.
  for (const auto [a, b, c] : {std::array{1.0, 2.0, 1.0}, std::array{1.0, 3.0, 2.0}}) {
    const ImmersionSpec s = mironov(a, b, c);
    const double k = a + b - c;
    for (int n = 0; n < 20; ++n) {
      const double x = uniform(0, kTau), y = uniform(0, kTau);
      const double u = c * (a + b + (b - a) * std::cos(2 * x)) / 2;
      const double expected =
          std::abs(k * k * (k * u - a * b * c) / (u * u * u) - k * k * k / (2 * u * u)) * std::sqrt(u);
      CHECK(residual_willmore_legendrian(s, x, y) == doctest::Approx(expected).epsilon(1e-10));
    }
  }
  // (1,2,1): the braces vanish where u = 2, i.e. x = 0 and x = pi
  CHECK(residual_willmore_legendrian(mironov(1, 2, 1), 0, 0.3) < 1e-12);
  CHECK(residual_willmore_legendrian(mironov(1, 2, 1), std::numbers::pi, 2) < 1e-12);
}

TEST_CASE("csL-Willmore residual") {
  for (int n = 0; n < 5; ++n) {
    CHECK(std::abs(residual_csl_willmore(calabi(), uniform(0, kTau), uniform(0, kTau)).expanded) <
          1e-6);
    CHECK(std::abs(residual_csl_willmore(mironov(), uniform(0, kTau), uniform(0, kTau)).expanded) <
          1e-5);
  }
  for (const auto& m : catalog_members()) {
    if (!m.minimal) continue;
    const auto p = interior_point(m.spec);
    CHECK(std::abs(residual_csl_willmore(m.spec, p[0], p[1]).expanded) < 1e-8);
  }
}

TEST_CASE("the two csL-Willmore forms agree") {
  for (const auto& spec : {calabi(), mironov(), join_surface()}) {
    for (int n = 0; n < 5; ++n) {
      const auto p = interior_point(spec);
      const CslWillmoreResidual r = residual_csl_willmore(spec, p[0], p[1]);
      CHECK(std::abs(r.expanded - 2 * r.direct) < 1e-4);
    }
  }
  // on the join surface the residual is far from zero
  const CslWillmoreResidual r = residual_csl_willmore(join_surface(), 0.3, 0.4);
  CHECK(std::abs(r.expanded) > 1e-3);
}

TEST_CASE("obstruction trace") {
  for (int n = 0; n < 10; ++n) {
    CHECK(std::abs(obstruction_trace(calabi(), uniform(0, kTau), uniform(0, kTau))) < 1e-8);
    CHECK(std::abs(obstruction_trace(mironov(), uniform(0, kTau), uniform(0, kTau))) < 1e-6);
  }
  for (const auto& m : catalog_members()) {
    if (!m.minimal) continue;
    const auto p = interior_point(m.spec);
    CHECK(std::abs(obstruction_trace(m.spec, p[0], p[1])) < 1e-10);
  }
}

TEST_CASE("stencil room near a chart edge") {
  const ImmersionSpec s = geodesic_sphere();
  try {
    check_stencil_room(s, 1.199, 0.0);
    FAIL("expected ERR_STENCIL_OUT_OF_DOMAIN");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::stencil_out_of_domain);
  }
  CHECK_NOTHROW(check_stencil_room(s, 0.0, 0.0));
  CHECK_NOTHROW(check_stencil_room(calabi(), 6.28, 0.0));

  const ResidualReport r = identity_suite(s, {{0.0, 1.0}, {1.1999, 1.0}});
  REQUIRE(r.point_errors.size() == 2);
  CHECK(r.point_errors[0].empty());
  CHECK(r.point_errors[1].find("ERR_STENCIL_OUT_OF_DOMAIN") == 0);
  CHECK(r.evaluated_points() == 1);
  CHECK(r.check("csl").aggregates().skipped == 1);
}

TEST_CASE("identity suite on the catalog") {
  for (const auto& m : catalog_members()) {
    CAPTURE(m.name);
    const ResidualReport r = identity_suite(m.spec, seeded_points(m.spec, 30, 3));
    CHECK(r.evaluated_points() == 30);
    for (const auto& c : r.checks) {
      CAPTURE(c.spec.name);
      const Aggregates a = c.aggregates();
      if (c.spec.scope == CheckScope::informational) continue;
      CHECK(a.max <= c.spec.tolerance);
      if (m.minimal) CHECK(a.max < 1e-8);
    }
  }
}

TEST_CASE("identities hold on a surface that is not csL") {
  const ImmersionSpec j = join_surface();
  const ResidualReport r = identity_suite(j, seeded_points(j, 30, 5));
  CHECK(r.evaluated_points() == 30);
  CHECK(r.check("csl").aggregates().max > 1e-3);
  CHECK(r.check("csl_willmore").aggregates().max > 1e-3);
  for (const char* name :
       {"legendrian_defect", "sigma_symmetry", "reeb_orthogonality", "normal_frame", "claim",
        "gauss_brioschi", "ricci_identity", "normal_laplacian_identity", "div_jb_identity",
        "codazzi", "closedness", "sasakian", "willmore_operator_forms", "willmore_reeb",
        "csl_fd_route", "nabla_fd_route", "csl_willmore_forms"}) {
    CAPTURE(name);
    const CheckSeries& c = r.check(name);
    CHECK(c.aggregates().max <= c.spec.tolerance);
  }
}

TEST_CASE("residual norms do not depend on the chart orientation") {
  for (auto m : catalog_members()) {
    CAPTURE(m.name);
    const ImmersionSpec sw = m.spec.with_swapped_chart();
    const auto pts = seeded_points(m.spec, 8, 11);
    std::vector<std::array<double, 2>> swapped;
    for (const auto& p : pts) swapped.push_back({p[1], p[0]});
    const ResidualReport a = identity_suite(m.spec, pts);
    const ResidualReport b = identity_suite(sw, swapped);
    for (std::size_t c = 0; c < a.checks.size(); ++c) {
      CAPTURE(a.checks[c].spec.name);
      for (std::size_t k = 0; k < pts.size(); ++k) {
        REQUIRE(a.checks[c].values[k].has_value() == b.checks[c].values[k].has_value());
        if (!a.checks[c].values[k]) continue;
        CHECK(std::abs(*a.checks[c].values[k] - *b.checks[c].values[k]) < 1e-10);
      }
    }
  }
}

TEST_CASE("point sets") {
  const auto g = grid_points(geodesic_sphere(), 4, 4);
  REQUIRE(g.size() == 16);
  CHECK(g[0][0] == doctest::Approx(-1.2 + 0.3));
  CHECK(g[0][1] == 0.0);
  try {
    grid_points(calabi(), 3, 8);
    FAIL("expected ERR_GRID");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::grid);
  }
  const auto s1 = seeded_points(geodesic_sphere(), 50, 9);
  const auto s2 = seeded_points(geodesic_sphere(), 50, 9);
  CHECK(s1 == s2);
  CHECK(seeded_points(geodesic_sphere(), 50, 10) != s1);
  for (const auto& p : s1) {
    CHECK(std::abs(p[0]) <= 1.2 - 0.12);
    CHECK(p[1] >= 0.0);
    CHECK(p[1] < kTau);
  }
}

TEST_CASE("parallel sweeps match serial ones") {
  const auto pts = seeded_points(mironov(), 24, 2);
  SuiteOptions serial, parallel;
  parallel.workers = 4;
  const ResidualReport a = identity_suite(mironov(), pts, serial);
  const ResidualReport b = identity_suite(mironov(), pts, parallel);
  for (std::size_t c = 0; c < a.checks.size(); ++c) CHECK(a.checks[c].values == b.checks[c].values);
  const EnergyResult e1 = willmore_energy(calabi(), 16, 16, 1);
  const EnergyResult e4 = willmore_energy(calabi(), 16, 16, 4);
  CHECK(e1.energy == e4.energy);
  CHECK(e1.area == e4.area);
}

TEST_CASE("energy") {
  const double area = 3.2 * std::numbers::pi * std::numbers::pi;
  const EnergyResult c = willmore_energy(calabi(), 64, 64);
  CHECK(c.area == doctest::Approx(area).epsilon(1e-13));
  CHECK(c.energy == doctest::Approx((1.0 + 1289.0 / 9216.0) * area).epsilon(1e-12));
  const EnergyResult s = willmore_energy(geodesic_sphere(), 32, 32);
  CHECK(std::abs(s.energy - s.area) < 1e-12);
  // exact area of the band |u| <= 1.2 is 4 pi sin(1.2); the end-point rule converges slowly
  CHECK(s.area == doctest::Approx(4 * std::numbers::pi * std::sin(1.2)).epsilon(1e-3));
  try {
    willmore_energy(calabi(), 2, 64);
    FAIL("expected ERR_GRID");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::grid);
  }
}

TEST_CASE("Mironov energy converges spectrally") {
  const EnergyResult a = willmore_energy(mironov(), 32, 32);
  const EnergyResult b = willmore_energy(mironov(), 64, 64);
  CHECK(std::abs(a.energy - b.energy) < 1e-10 * b.energy);
}

}  // TEST_SUITE
