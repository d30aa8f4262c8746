#pragma once

// Truncated bivariate Taylor polynomials ("jets") with complex coefficients.
//
// A Jet2 of degree d stores c_{jk} for j + k <= d, where
//   c_{jk} = (d^{j+k} f / dx^j dy^k) / (j! k!)
// at the expansion point. Coefficients are kept densely in graded
// lexicographic order: degree n block starts at n(n+1)/2 and holds
// x^n, x^{n-1} y, ..., y^n.
//
// Binary operations on jets of different degree produce a jet of the lower
// degree (the higher-degree operand is truncated).

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>

#include "leglab/ambient.hpp"

namespace leglab {

inline constexpr int kMaxJetDegree = 4;
inline constexpr std::size_t kMaxJetCoeffs =
    (kMaxJetDegree + 1) * (kMaxJetDegree + 2) / 2;

constexpr std::size_t jet_coeff_count(int degree) {
  return static_cast<std::size_t>((degree + 1) * (degree + 2) / 2);
}

constexpr std::size_t jet_index(int j, int k) {
  const int n = j + k;
  return static_cast<std::size_t>(n * (n + 1) / 2 + k);
}

class Jet2 {
 public:
  /// Zero jet of degree 0.
  Jet2() = default;
  /// Zero jet; throws ERR_DEGREE outside [0, 4].
  explicit Jet2(int degree);

  static Jet2 constant(Complex value, int degree);

  int degree() const noexcept { return degree_; }
  Complex value() const noexcept { return c_[0]; }

  /// c_{jk}; throws ERR_ORDER when j + k exceeds the degree.
  Complex coeff(int j, int k) const;
  void set_coeff(int j, int k, Complex v);

  std::span<const Complex> coeffs() const {
    return {c_.data(), jet_coeff_count(degree_)};
  }

  Jet2 truncated(int degree) const;

  /// Partial derivatives as jets of one degree less; ERR_ORDER at degree 0.
  Jet2 dx() const;
  Jet2 dy() const;

  Jet2& operator+=(const Jet2& o);
  Jet2& operator-=(const Jet2& o);
  Jet2& operator*=(const Jet2& o);
  Jet2& operator/=(const Jet2& o);
  Jet2& operator+=(Complex s);
  Jet2& operator-=(Complex s);
  Jet2& operator*=(Complex s);

  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator*(const Jet2& a, const Jet2& b);
  friend Jet2 operator/(const Jet2& a, const Jet2& b);
  friend Jet2 operator-(const Jet2& a);

  friend Jet2 operator+(Jet2 a, Complex s) { return a += s; }
  friend Jet2 operator+(Complex s, Jet2 a) { return a += s; }
  friend Jet2 operator-(Jet2 a, Complex s) { return a -= s; }
  friend Jet2 operator-(Complex s, const Jet2& a) { return -a + s; }
  friend Jet2 operator*(Jet2 a, Complex s) { return a *= s; }
  friend Jet2 operator*(Complex s, Jet2 a) { return a *= s; }
  friend Jet2 operator/(Jet2 a, Complex s) { return a *= (1.0 / s); }
  friend Jet2 operator/(Complex s, const Jet2& a);
  friend Jet2 operator+(Jet2 a, double s) { return a += Complex(s); }
  friend Jet2 operator+(double s, Jet2 a) { return a += Complex(s); }
  friend Jet2 operator-(Jet2 a, double s) { return a -= Complex(s); }
  friend Jet2 operator-(double s, const Jet2& a) { return -a + Complex(s); }
  friend Jet2 operator*(Jet2 a, double s) { return a *= Complex(s); }
  friend Jet2 operator*(double s, Jet2 a) { return a *= Complex(s); }
  friend Jet2 operator/(Jet2 a, double s) { return a *= Complex(1.0 / s); }
  friend Jet2 operator/(double s, const Jet2& a) { return Complex(s) / a; }

 private:
  int degree_ = 0;
  std::array<Complex, kMaxJetCoeffs> c_{};
};

/// Coordinate jets (x, y) seeded at (x0, y0); ERR_DEGREE outside [0, 4].
std::pair<Jet2, Jet2> lift_point(double x0, double y0, int degree);

enum class AnalyticFn { exp, sin, cos, sqrt, log };

/// Taylor composition f(a). sqrt and log throw ERR_DOMAIN when the
/// expansion value lies on the branch cut (real and <= 0) at positive
/// degree, and at value 0.
Jet2 analytic(AnalyticFn f, const Jet2& a);

inline Jet2 exp(const Jet2& a) { return analytic(AnalyticFn::exp, a); }
inline Jet2 sin(const Jet2& a) { return analytic(AnalyticFn::sin, a); }
inline Jet2 cos(const Jet2& a) { return analytic(AnalyticFn::cos, a); }
inline Jet2 sqrt(const Jet2& a) { return analytic(AnalyticFn::sqrt, a); }
inline Jet2 log(const Jet2& a) { return analytic(AnalyticFn::log, a); }

/// Integer power by repeated multiplication; negative n inverts.
Jet2 pow(const Jet2& a, int n);

/// j! k! c_{jk}; ERR_ORDER when j + k exceeds the degree or j, k < 0.
Complex extract_partial(const Jet2& a, int j, int k);

// Coefficient-wise maps. The chart variables are real, so the Taylor
// coefficients of conj(f), Re f and Im f are the conjugates, real parts and
// imaginary parts of those of f.
Jet2 conj(const Jet2& a);
Jet2 real_part(const Jet2& a);
Jet2 imag_part(const Jet2& a);

using JVec3 = Vec3<Jet2>;

/// Jet of sum_k u_k conj(v_k).
Jet2 hermitian_inner(const JVec3& u, const JVec3& v);
/// Jet of Re sum_k u_k conj(v_k).
Jet2 real_inner(const JVec3& u, const JVec3& v);
JVec3 apply_J(const JVec3& v);
JVec3 dx(const JVec3& v);
JVec3 dy(const JVec3& v);
CVec3 value(const JVec3& v);

}  // namespace leglab
