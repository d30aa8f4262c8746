#include <doctest.h>

#include <cmath>

#include "leglab/error.hpp"
#include "leglab/jet.hpp"
#include "support.hpp"

using namespace leglab;
using namespace testsupport;

namespace {

Jet2 random_jet(int degree, double scale = 1.0) {
  Jet2 a(degree);
  for (int n = 0; n <= degree; ++n) {
    for (int k = 0; k <= n; ++k) {
      a.set_coeff(n - k, k, Complex(uniform(-scale, scale), uniform(-scale, scale)));
    }
  }
  return a;
}

double jet_dist(const Jet2& a, const Jet2& b) {
  double m = 0.0;
  const auto ca = a.coeffs(), cb = b.coeffs();
  REQUIRE(ca.size() == cb.size());
  for (std::size_t i = 0; i < ca.size(); ++i) m = std::max(m, std::abs(ca[i] - cb[i]));
  return m;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::config;
}

}  // namespace

TEST_SUITE("jets") {

TEST_CASE("lift_point") {
  auto [x, y] = lift_point(0, 0, 2);
  CHECK(x.coeff(0, 0) == Complex(0));
  CHECK(x.coeff(1, 0) == Complex(1));
  CHECK(x.coeff(0, 1) == Complex(0));
  CHECK(x.coeff(2, 0) == Complex(0));
  CHECK(y.coeff(0, 1) == Complex(1));

  auto [x2, y2] = lift_point(1.5, -2, 1);
  CHECK(x2.coeff(0, 0) == Complex(1.5));
  CHECK(x2.coeff(1, 0) == Complex(1));
  CHECK(y2.coeff(0, 0) == Complex(-2));

  auto [x3, y3] = lift_point(3, 0, 2);
  const Jet2 sq = x3 * x3;
  CHECK(sq.coeff(0, 0) == Complex(9));
  CHECK(sq.coeff(1, 0) == Complex(6));
  CHECK(sq.coeff(2, 0) == Complex(1));
}

TEST_CASE("degree bounds") {
  CHECK(code_of([] { lift_point(0, 0, 5); }) == ErrorCode::degree);
  CHECK(code_of([] { lift_point(0, 0, -1); }) == ErrorCode::degree);
  CHECK(code_of([] { Jet2(1).coeff(2, 0); }) == ErrorCode::order);
  CHECK(code_of([] { extract_partial(Jet2(2), 2, 1); }) == ErrorCode::order);
  CHECK(code_of([] { Jet2(0).dx(); }) == ErrorCode::order);
}

TEST_CASE("ring operations") {
  auto [x, y] = lift_point(2, 3, 2);
  const Jet2 p = x * y;
  CHECK(p.coeff(0, 0) == Complex(6));
  CHECK(p.coeff(1, 0) == Complex(3));
  CHECK(p.coeff(0, 1) == Complex(2));
  CHECK(p.coeff(1, 1) == Complex(1));
  CHECK(p.coeff(2, 0) == Complex(0));

  for (int n = 0; n < 50; ++n) {
    Jet2 a = random_jet(4);
    a.set_coeff(0, 0, Complex(2.0 + uniform(0, 1), uniform(-1, 1)));
    CHECK(jet_dist(a / a, Jet2::constant(1.0, 4)) < 1e-13);
  }
}

TEST_CASE("mixed degrees truncate to the lower degree") {
  const Jet2 a = random_jet(4), b = random_jet(2);
  const Jet2 s = a + b;
  CHECK(s.degree() == 2);
  CHECK(jet_dist(s, a.truncated(2) + b) == 0.0);
  CHECK((a * b).degree() == 2);
}

TEST_CASE("division by a jet with zero value") {
  auto [x, y] = lift_point(0, 0, 3);
  CHECK(code_of([&] { (void)(1.0 / x); }) == ErrorCode::divide_by_zero_jet);
}

TEST_CASE("ring axioms on random jets") {
  for (int n = 0; n < 100; ++n) {
    const Jet2 a = random_jet(4), b = random_jet(4), c = random_jet(4);
    CHECK(jet_dist((a * b) * c, a * (b * c)) < 1e-13);
    CHECK(jet_dist(a * (b + c), a * b + a * c) < 1e-13);
    CHECK(jet_dist(a * b, b * a) < 1e-15);
    CHECK(jet_dist((a + b) - b, a) < 1e-15);
  }
}

TEST_CASE("Leibniz rule for extract_partial") {
  const auto binom = [](int n, int k) {
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  for (int n = 0; n < 20; ++n) {
    const Jet2 a = random_jet(4), b = random_jet(4);
    const Jet2 p = a * b;
    for (int j = 0; j <= 4; ++j) {
      for (int k = 0; j + k <= 4; ++k) {
        Complex sum = 0;
        for (int p1 = 0; p1 <= j; ++p1) {
          for (int q1 = 0; q1 <= k; ++q1) {
            sum += binom(j, p1) * binom(k, q1) * extract_partial(a, p1, q1) *
                   extract_partial(b, j - p1, k - q1);
          }
        }
        CHECK(std::abs(extract_partial(p, j, k) - sum) < 1e-11 * (1 + std::abs(sum)));
      }
    }
  }
}

TEST_CASE("analytic functions") {
  const Jet2 e = exp(Jet2(4));
  CHECK(jet_dist(e, Jet2::constant(1.0, 4)) == 0.0);

  for (int n = 0; n < 50; ++n) {
    const Jet2 a = random_jet(4);
    const Jet2 s = sin(a), c = cos(a);
    CHECK(jet_dist(s * s + c * c, Jet2::constant(1.0, 4)) < 1e-13);
  }

  // d^n/dt^n exp(i k t) = (i k)^n exp(i k t)
  const double k = 0.6 / 0.8, t0 = 0.4;
  auto [t, s] = lift_point(t0, 0.0, 4);
  const Jet2 f = exp(kI * k * t);
  for (int m = 0; m <= 4; ++m) {
    const Complex expect = std::pow(kI * k, m) * std::exp(kI * k * t0);
    CHECK(std::abs(extract_partial(f, m, 0) - expect) < 1e-14);
    CHECK(std::abs(extract_partial(f, 0, std::min(m, 1))) - (m == 0 ? 1.0 : 0.0) < 1e-15);
  }
}

TEST_CASE("sqrt and log branch cut") {
  auto [x, y] = lift_point(-1.0, 0.0, 2);
  CHECK(code_of([&] { sqrt(x); }) == ErrorCode::domain);
  CHECK(code_of([&] { log(x); }) == ErrorCode::domain);
  auto [z, w] = lift_point(0.0, 0.0, 0);
  CHECK(code_of([&] { log(z); }) == ErrorCode::domain);
  auto [u, v] = lift_point(2.0, 0.0, 3);
  const Jet2 r = sqrt(u);
  CHECK(jet_dist(r * r, u) < 1e-15);
  CHECK(jet_dist(exp(log(u)), u) < 1e-14);
}

TEST_CASE("extract_partial") {
  CHECK(extract_partial(Jet2::constant(2.5, 3), 0, 0) == Complex(2.5));
  auto [x, y] = lift_point(1, 1, 3);
  CHECK(extract_partial(x * x * y, 2, 1) == Complex(2));
  CHECK(extract_partial(x * x * y, 1, 0) == Complex(2));
}

TEST_CASE("1/(ab+u) on the Mironov profile against differences") {
  const double a = 1, b = 2, c = 1;
  auto f = [&](double x) {
    const double u = c * (a + b + (b - a) * std::cos(2 * x)) / 2;
    return 1.0 / (a * b + u);
  };
  auto [x, y] = lift_point(0.0, 0.0, 2);
  const Jet2 u = (c / 2) * ((a + b) + (b - a) * cos(2.0 * x));
  const Jet2 g = 1.0 / (a * b + u);
  const double h = 1e-3;
  const double d1 = (-f(2 * h) + 8 * f(h) - 8 * f(-h) + f(-2 * h)) / (12 * h);
  const double d2 =
      (-f(2 * h) + 16 * f(h) - 30 * f(0) + 16 * f(-h) - f(-2 * h)) / (12 * h * h);
  CHECK(std::abs(extract_partial(g, 0, 0).real() - f(0)) < 1e-15);
  CHECK(std::abs(extract_partial(g, 1, 0).real() - d1) < 1e-8);
  CHECK(std::abs(extract_partial(g, 2, 0).real() - d2) < 1e-8);
}

TEST_CASE("conj, real and imaginary parts") {
  const Jet2 a = random_jet(3);
  const Jet2 re = real_part(a), im = imag_part(a);
  CHECK(jet_dist(re + kI * im, a) < 1e-15);
  CHECK(jet_dist(conj(a), re - kI * im) < 1e-15);
}

}  // TEST_SUITE
