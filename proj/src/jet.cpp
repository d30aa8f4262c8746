#include "leglab/jet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "leglab/error.hpp"

namespace leglab {

namespace {

void check_degree(int degree) {
  if (degree < 0 || degree > kMaxJetDegree) {
    throw Error(ErrorCode::degree,
                "jet degree " + std::to_string(degree) + " outside [0, 4]");
  }
}

constexpr double kFactorial[] = {1.0, 1.0, 2.0, 6.0, 24.0, 120.0};

}  // namespace

Jet2::Jet2(int degree) : degree_(degree) { check_degree(degree); }

Jet2 Jet2::constant(Complex value, int degree) {
  Jet2 j(degree);
  j.c_[0] = value;
  return j;
}

Complex Jet2::coeff(int j, int k) const {
  if (j < 0 || k < 0 || j + k > degree_) {
    throw Error(ErrorCode::order, "coefficient (" + std::to_string(j) + ", " +
                                      std::to_string(k) +
                                      ") exceeds jet degree " +
                                      std::to_string(degree_));
  }
  return c_[jet_index(j, k)];
}

void Jet2::set_coeff(int j, int k, Complex v) {
  if (j < 0 || k < 0 || j + k > degree_) {
    throw Error(ErrorCode::order, "coefficient index exceeds jet degree");
  }
  c_[jet_index(j, k)] = v;
}

Jet2 Jet2::truncated(int degree) const {
  check_degree(degree);
  Jet2 out(std::min(degree, degree_));
  std::copy_n(c_.begin(), jet_coeff_count(out.degree_), out.c_.begin());
  return out;
}

Jet2 Jet2::dx() const {
  if (degree_ == 0) {
    throw Error(ErrorCode::order, "cannot differentiate a degree-0 jet");
  }
  Jet2 out(degree_ - 1);
  for (int n = 0; n < degree_; ++n) {
    for (int k = 0; k <= n; ++k) {
      const int j = n - k;
      out.c_[jet_index(j, k)] = static_cast<double>(j + 1) *
                                c_[jet_index(j + 1, k)];
    }
  }
  return out;
}

Jet2 Jet2::dy() const {
  if (degree_ == 0) {
    throw Error(ErrorCode::order, "cannot differentiate a degree-0 jet");
  }
  Jet2 out(degree_ - 1);
  for (int n = 0; n < degree_; ++n) {
    for (int k = 0; k <= n; ++k) {
      const int j = n - k;
      out.c_[jet_index(j, k)] = static_cast<double>(k + 1) *
                                c_[jet_index(j, k + 1)];
    }
  }
  return out;
}

Jet2& Jet2::operator+=(const Jet2& o) {
  degree_ = std::min(degree_, o.degree_);
  const std::size_t n = jet_coeff_count(degree_);
  for (std::size_t q = 0; q < n; ++q) c_[q] += o.c_[q];
  std::fill(c_.begin() + n, c_.end(), Complex{});
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& o) {
  degree_ = std::min(degree_, o.degree_);
  const std::size_t n = jet_coeff_count(degree_);
  for (std::size_t q = 0; q < n; ++q) c_[q] -= o.c_[q];
  std::fill(c_.begin() + n, c_.end(), Complex{});
  return *this;
}

Jet2& Jet2::operator*=(const Jet2& o) { return *this = *this * o; }
Jet2& Jet2::operator/=(const Jet2& o) { return *this = *this / o; }

Jet2& Jet2::operator+=(Complex s) {
  c_[0] += s;
  return *this;
}

Jet2& Jet2::operator-=(Complex s) {
  c_[0] -= s;
  return *this;
}

Jet2& Jet2::operator*=(Complex s) {
  const std::size_t n = jet_coeff_count(degree_);
  for (std::size_t q = 0; q < n; ++q) c_[q] *= s;
  return *this;
}

Jet2 operator-(const Jet2& a) {
  Jet2 out(a.degree_);
  const std::size_t n = jet_coeff_count(a.degree_);
  for (std::size_t q = 0; q < n; ++q) out.c_[q] = -a.c_[q];
  return out;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
  const int d = std::min(a.degree_, b.degree_);
  Jet2 out(d);
  for (int n1 = 0; n1 <= d; ++n1) {
    const std::size_t base1 = jet_coeff_count(n1 - 1);
    for (int k1 = 0; k1 <= n1; ++k1) {
      const Complex ca = a.c_[base1 + k1];
      if (ca == Complex{}) continue;
      for (int n2 = 0; n2 <= d - n1; ++n2) {
        const std::size_t base2 = jet_coeff_count(n2 - 1);
        const std::size_t base_out = jet_coeff_count(n1 + n2 - 1) + k1;
        for (int k2 = 0; k2 <= n2; ++k2) {
          out.c_[base_out + k2] += ca * b.c_[base2 + k2];
        }
      }
    }
  }
  return out;
}

namespace {

// sum_n t[n] h^n for a jet h with zero constant term (Horner).
Jet2 compose_series(const std::array<Complex, kMaxJetDegree + 1>& t,
                    const Jet2& h) {
  const int d = h.degree();
  Jet2 acc = Jet2::constant(t[static_cast<std::size_t>(d)], d);
  for (int n = d - 1; n >= 0; --n) {
    acc = acc * h;
    acc += t[static_cast<std::size_t>(n)];
  }
  return acc;
}

Jet2 without_constant(const Jet2& a) {
  Jet2 h = a;
  h.set_coeff(0, 0, Complex{});
  return h;
}

}  // namespace

Jet2 operator/(Complex s, const Jet2& a) {
  const Complex b0 = a.value();
  if (std::abs(b0) <= 1e-14) {
    throw Error(ErrorCode::divide_by_zero_jet,
                "divisor value " + std::to_string(std::abs(b0)) +
                    " is below 1e-14");
  }
  // 1/b = (1/b0) * sum_n (-h/b0)^n with h = b - b0.
  std::array<Complex, kMaxJetDegree + 1> t{};
  for (int n = 0; n <= kMaxJetDegree; ++n) {
    t[static_cast<std::size_t>(n)] = (n % 2 == 0 ? 1.0 : -1.0);
  }
  const Jet2 h = without_constant(a) * (1.0 / b0);
  return compose_series(t, h) * (s / b0);
}

Jet2 operator/(const Jet2& a, const Jet2& b) { return a * (Complex(1.0) / b); }

std::pair<Jet2, Jet2> lift_point(double x0, double y0, int degree) {
  check_degree(degree);
  Jet2 x = Jet2::constant(x0, degree);
  Jet2 y = Jet2::constant(y0, degree);
  if (degree >= 1) {
    x.set_coeff(1, 0, 1.0);
    y.set_coeff(0, 1, 1.0);
  }
  return {x, y};
}

Jet2 analytic(AnalyticFn f, const Jet2& a) {
  // -0 imaginary parts are taken as +0: the cut belongs to the upper side.
  const Complex a0(a.value().real(), a.value().imag() + 0.0);
  const int d = a.degree();
  std::array<Complex, kMaxJetDegree + 1> t{};
  const auto on_cut = [&] { return a0.imag() == 0.0 && a0.real() <= 0.0; };

  switch (f) {
    case AnalyticFn::exp: {
      const Complex e = std::exp(a0);
      for (int n = 0; n <= d; ++n) t[n] = e / kFactorial[n];
      break;
    }
    case AnalyticFn::sin:
    case AnalyticFn::cos: {
      const Complex s = std::sin(a0);
      const Complex c = std::cos(a0);
      // Derivative cycle of sin: sin, cos, -sin, -cos.
      const std::array<Complex, 4> cycle{s, c, -s, -c};
      const int shift = (f == AnalyticFn::cos) ? 1 : 0;
      for (int n = 0; n <= d; ++n) {
        t[n] = cycle[static_cast<std::size_t>((n + shift) % 4)] / kFactorial[n];
      }
      break;
    }
    case AnalyticFn::sqrt: {
      if (a0 == Complex{} && d > 0) {
        throw Error(ErrorCode::domain, "sqrt is not differentiable at 0");
      }
      if (on_cut() && a0 != Complex{} && d > 0) {
        throw Error(ErrorCode::domain, "sqrt expansion point on branch cut");
      }
      // binom(1/2, n) a0^(1/2 - n)
      const Complex r = std::sqrt(a0);
      Complex coef = r;
      double binom = 1.0;
      for (int n = 0; n <= d; ++n) {
        t[n] = binom * coef;
        binom *= (0.5 - n) / (n + 1);
        if (n < d) coef /= a0;
      }
      break;
    }
    case AnalyticFn::log: {
      if (a0 == Complex{}) {
        throw Error(ErrorCode::domain, "log of zero");
      }
      if (on_cut() && d > 0) {
        throw Error(ErrorCode::domain, "log expansion point on branch cut");
      }
      t[0] = std::log(a0);
      Complex inv_pow = 1.0;
      for (int n = 1; n <= d; ++n) {
        inv_pow /= a0;
        t[n] = (n % 2 == 1 ? 1.0 : -1.0) * inv_pow / static_cast<double>(n);
      }
      break;
    }
  }
  return compose_series(t, without_constant(a));
}

Jet2 pow(const Jet2& a, int n) {
  if (n < 0) return Complex(1.0) / pow(a, -n);
  Jet2 result = Jet2::constant(1.0, a.degree());
  Jet2 base = a;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

Complex extract_partial(const Jet2& a, int j, int k) {
  return kFactorial[std::clamp(j, 0, 5)] * kFactorial[std::clamp(k, 0, 5)] *
         a.coeff(j, k);
}

Jet2 conj(const Jet2& a) {
  Jet2 out(a.degree());
  const auto c = a.coeffs();
  for (int n = 0; n <= a.degree(); ++n) {
    for (int k = 0; k <= n; ++k) {
      out.set_coeff(n - k, k, std::conj(c[jet_index(n - k, k)]));
    }
  }
  return out;
}

Jet2 real_part(const Jet2& a) {
  Jet2 out(a.degree());
  const auto c = a.coeffs();
  for (int n = 0; n <= a.degree(); ++n) {
    for (int k = 0; k <= n; ++k) {
      out.set_coeff(n - k, k, c[jet_index(n - k, k)].real());
    }
  }
  return out;
}

Jet2 imag_part(const Jet2& a) {
  Jet2 out(a.degree());
  const auto c = a.coeffs();
  for (int n = 0; n <= a.degree(); ++n) {
    for (int k = 0; k <= n; ++k) {
      out.set_coeff(n - k, k, c[jet_index(n - k, k)].imag());
    }
  }
  return out;
}

Jet2 hermitian_inner(const JVec3& u, const JVec3& v) {
  return u[0] * conj(v[0]) + u[1] * conj(v[1]) + u[2] * conj(v[2]);
}

Jet2 real_inner(const JVec3& u, const JVec3& v) {
  return real_part(hermitian_inner(u, v));
}

JVec3 apply_J(const JVec3& v) { return kI * v; }

JVec3 dx(const JVec3& v) { return {{v[0].dx(), v[1].dx(), v[2].dx()}}; }
JVec3 dy(const JVec3& v) { return {{v[0].dy(), v[1].dy(), v[2].dy()}}; }

CVec3 value(const JVec3& v) {
  return {{v[0].value(), v[1].value(), v[2].value()}};
}

}  // namespace leglab
