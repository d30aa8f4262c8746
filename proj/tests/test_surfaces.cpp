#include <doctest.h>

#include <cmath>
#include <numbers>

#include "leglab/error.hpp"
#include "leglab/geometry.hpp"
#include "leglab/surfaces.hpp"
#include "support.hpp"

using namespace leglab;
using namespace testsupport;

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::config;
}

double jet_vec_dist(const JVec3& a, const JVec3& b, int order) {
  double m = 0.0;
  for (int c = 0; c < 3; ++c) {
    for (int j = 0; j <= order; ++j) {
      for (int k = 0; j + k <= order; ++k) {
        m = std::max(m, std::abs(extract_partial(a[c], j, k) - extract_partial(b[c], j, k)));
      }
    }
  }
  return m;
}

}  // namespace

TEST_SUITE("surfaces") {

TEST_CASE("calabi parameters") {
  const ImmersionSpec c = calabi();
  CHECK(c.kind() == SurfaceKind::calabi);
  CHECK(c.param("r1") == 0.8);
  CHECK(c.param("r4") == 0.8);
  CHECK(c.domain().periodic_x);
  CHECK(c.domain().periodic_y);
  CHECK(c.domain().x_max == doctest::Approx(kTau));
  CHECK(code_of([] { calabi(0.8, 0.5, 0.6, 0.8); }) == ErrorCode::param_constraint);
  CHECK(code_of([] { calabi(1.0, 0.0, 0.6, 0.8); }) == ErrorCode::param_constraint);
  CHECK(code_of([] { mironov(1, -2, 1); }) == ErrorCode::param_constraint);
}

TEST_CASE("calabi lies on the sphere with the printed metric") {
  const ImmersionSpec c = calabi();
  for (int n = 0; n < 100; ++n) {
    const JVec3 f = evaluate_jet(c, uniform(0, kTau), uniform(0, kTau), 1);
    CHECK(std::abs(norm(value(f)) - 1.0) < 1e-13);
    const Metric m = first_fundamental(f);
    CHECK(std::abs(m.g[0][0] - 1.0) < 1e-14);
    CHECK(std::abs(m.g[0][1]) < 1e-14);
    CHECK(std::abs(m.g[1][1] - 0.64) < 1e-14);
  }
}

TEST_CASE("calabi at the origin") {
  const JVec3 f = evaluate_jet(calabi(), 0, 0, 1);
  const CVec3 v = value(f);
  CHECK(std::abs(v[0] - Complex(0.48)) < 1e-15);
  CHECK(std::abs(v[1] - Complex(0.64)) < 1e-15);
  CHECK(std::abs(v[2] - Complex(0.6)) < 1e-15);
  // dF/dt = (i r2 r3, i r2 r4, -i r1) at t = s = 0
  CHECK(std::abs(extract_partial(f[0], 1, 0) - Complex(0, 0.36)) < 1e-15);
  CHECK(std::abs(extract_partial(f[1], 1, 0) - Complex(0, 0.48)) < 1e-15);
  CHECK(std::abs(extract_partial(f[2], 1, 0) - Complex(0, -0.8)) < 1e-15);
  // dF/ds = (i r1 r4, -i r1 r3, 0)
  CHECK(std::abs(extract_partial(f[0], 0, 1) - Complex(0, 0.64)) < 1e-15);
  CHECK(std::abs(extract_partial(f[1], 0, 1) - Complex(0, -0.48)) < 1e-15);
  CHECK(std::abs(extract_partial(f[2], 0, 1)) < 1e-15);
}

TEST_CASE("mironov metric and Legendrian conditions") {
  const ImmersionSpec m = mironov(1, 2, 1);
  const Metric g0 = first_fundamental(evaluate_jet(m, 0, 0.3, 1));
  CHECK(g0.g[0][0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(g0.g[1][1] == doctest::Approx(2.0).epsilon(1e-14));
  for (int n = 0; n < 100; ++n) {
    const double x = uniform(0, kTau), y = uniform(0, kTau);
    const JVec3 f = evaluate_jet(m, x, y, 1);
    const CVec3 F = value(f), Fx = value(dx(f)), Fy = value(dy(f));
    CHECK(std::abs(hermitian_inner(Fx, F)) < 1e-12);
    CHECK(std::abs(hermitian_inner(Fy, F)) < 1e-12);
    const double u = (1 + 2 + std::cos(2 * x)) / 2;
    const Metric g = first_fundamental(f);
    CHECK(std::abs(g.g[0][0] - u / (2 + u)) < 1e-13);
    CHECK(std::abs(g.g[1][1] - u) < 1e-13);
    CHECK(std::abs(g.g[0][1]) < 1e-13);
  }
}

TEST_CASE("geodesic sphere") {
  const ImmersionSpec s = geodesic_sphere();
  const CVec3 f = value(evaluate_jet(s, 0, 0, 0));
  CHECK(f[0] == Complex(1));
  CHECK(f[1] == Complex(0));
  CHECK(f[2] == Complex(0));
  CHECK_FALSE(s.domain().periodic_x);
  CHECK(s.domain().periodic_y);
  for (int n = 0; n < 100; ++n) {
    const JVec3 j = evaluate_jet(s, uniform(-1.2, 1.2), uniform(0, kTau), 2);
    CHECK(legendrian_defect(j) < 1e-14);
  }
  CHECK(code_of([&] { evaluate_jet(s, 1.3, 0, 1); }) == ErrorCode::domain);
}

TEST_CASE("every catalog member is Legendrian on a dense grid") {
  for (const auto& m : catalog_members()) {
    CAPTURE(m.name);
    const ChartDomain& d = m.spec.domain();
    double worst = 0.0;
    for (int a = 0; a < 40; ++a) {
      for (int b = 0; b < 40; ++b) {
        const double x = d.x_min + (a + 0.5) * d.width() / 40;
        const double y = d.y_min + (b + 0.5) * d.height() / 40;
        worst = std::max(worst, legendrian_defect(evaluate_jet(m.spec, x, y, 1)));
      }
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("periodic wrap is exact") {
  for (const auto& spec : {calabi(), mironov()}) {
    for (int n = 0; n < 50; ++n) {
      // Snap to coordinates whose shift by one period is representable.
      const double x = (uniform(0, kTau) + kTau) - kTau;
      const double y = (uniform(0, kTau) + kTau) - kTau;
      REQUIRE((x + kTau) - kTau == x);
      const JVec3 a = evaluate_jet(spec, x, y, 3);
      const JVec3 b = evaluate_jet(spec, x + kTau, y + kTau, 3);
      CHECK(jet_vec_dist(a, b, 3) == 0.0);
    }
  }
  const auto [wx, wy] = wrap_to_chart(calabi(), -0.5, 7.0);
  CHECK(wx == doctest::Approx(kTau - 0.5));
  CHECK(wy == doctest::Approx(7.0 - kTau));
}

TEST_CASE("local evaluation does not wrap") {
  const ImmersionSpec c = calabi();
  const JVec3 a = evaluate_jet_local(c, kTau + 0.01, 0.3, 2);
  const JVec3 b = evaluate_jet(c, 0.01, 0.3, 2);
  // Same point of the torus only up to the non-closing chart period.
  CHECK(jet_vec_dist(a, b, 0) > 0.0);
  CHECK(code_of([] { evaluate_jet_local(geodesic_sphere(), 1.25, 0.0, 1); }) ==
        ErrorCode::domain);
}

TEST_CASE("expression-defined calabi equals the catalog") {
  const ImmersionSpec e = calabi_expression();
  const ImmersionSpec c = calabi();
  for (int n = 0; n < 100; ++n) {
    const double x = uniform(0, kTau), y = uniform(0, kTau);
    CHECK(jet_vec_dist(evaluate_jet(e, x, y, 3), evaluate_jet(c, x, y, 3), 3) < 1e-13);
  }
}

TEST_CASE("expression surfaces are validated") {
  const ChartDomain d{0, 1, 0, 1, false, false};
  try {
    expression_surface({"q*x", "0", "1"}, {}, d);
    FAIL("expected ERR_VALIDATION");
  } catch (const ValidationError& e) {
    CHECK(e.code() == ErrorCode::validation);
    REQUIRE(e.diagnostics().size() == 1);
    CHECK(e.diagnostics()[0].message == "unknown parameter q");
  }
}

TEST_CASE("off-sphere and degenerate expression surfaces") {
  const ChartDomain d{0, 1, 0, 1, false, false};
  const ImmersionSpec off = expression_surface({"2*cos(x)", "2*sin(x)", "y"}, {}, d);
  CHECK(code_of([&] { evaluate_jet(off, 0.5, 0.5, 2); }) == ErrorCode::not_on_sphere);

  const ImmersionSpec flat = expression_surface({"1", "0", "0"}, {}, d);
  CHECK(code_of([&] { point_report(flat, 0.5, 0.5); }) == ErrorCode::degenerate_metric);
}

TEST_CASE("make_surface") {
  CHECK(make_surface("mironov", {{"c", 3}}).param("c") == 3);
  CHECK(make_surface("mironov", {{"c", 3}}).param("a") == 1);
  CHECK(make_surface("calabi", {}).label() == "calabi(r1=0.8,r2=0.6,r3=0.6,r4=0.8)");
  CHECK(code_of([] { make_surface("klein", {}); }) == ErrorCode::unsupported_surface);
  CHECK(code_of([] { make_surface("calabi", {{"r9", 1}}); }) == ErrorCode::param_constraint);
}

TEST_CASE("swapped chart") {
  const ImmersionSpec c = calabi();
  const ImmersionSpec s = c.with_swapped_chart();
  CHECK(s.chart_swapped());
  const JVec3 a = evaluate_jet(c, 0.3, 1.1, 2);
  const JVec3 b = evaluate_jet(s, 1.1, 0.3, 2);
  for (int k = 0; k < 3; ++k) {
    CHECK(std::abs(extract_partial(a[k], 1, 0) - extract_partial(b[k], 0, 1)) < 1e-15);
    CHECK(std::abs(extract_partial(a[k], 2, 0) - extract_partial(b[k], 0, 2)) < 1e-15);
  }
}

}  // TEST_SUITE
