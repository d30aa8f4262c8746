#pragma once

// Complex 3-space C^3 = R^6 with the standard Sasakian structure of the unit
// 5-sphere: complex structure J (multiplication by i), Reeb field R and contact
// form alpha(v) = <v, R>.

#include <array>
#include <complex>
#include <cstddef>

namespace leglab {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// Fixed-size 3-vector over a coefficient ring (complex numbers or jets).
template <class T>
struct Vec3 {
  std::array<T, 3> c{};

  T& operator[](std::size_t k) { return c[k]; }
  const T& operator[](std::size_t k) const { return c[k]; }

  Vec3& operator+=(const Vec3& o) {
    for (std::size_t k = 0; k < 3; ++k) c[k] += o.c[k];
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    for (std::size_t k = 0; k < 3; ++k) c[k] -= o.c[k];
    return *this;
  }
  friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend Vec3 operator-(const Vec3& a) {
    Vec3 r;
    for (std::size_t k = 0; k < 3; ++k) r.c[k] = -a.c[k];
    return r;
  }
  template <class S>
  friend Vec3 operator*(const S& s, const Vec3& a) {
    Vec3 r;
    for (std::size_t k = 0; k < 3; ++k) r.c[k] = s * a.c[k];
    return r;
  }
  template <class S>
  friend Vec3 operator*(const Vec3& a, const S& s) {
    return s * a;
  }
};

using CVec3 = Vec3<Complex>;

/// Sign convention for the Reeb field R = sign * i * p.
enum class ReebSign { minus_i, plus_i };

/// A point of the unit 5-sphere; construction checks |<p,p> - 1| <= 1e-12.
class SpherePoint {
 public:
  explicit SpherePoint(const CVec3& p);

  const CVec3& vec() const noexcept { return p_; }

 private:
  CVec3 p_;
};

/// sum_k u_k conj(v_k); linear in the first slot.
Complex hermitian_inner(const CVec3& u, const CVec3& v);
/// Euclidean inner product of R^6: Re(hermitian_inner(u, v)).
double real_inner(const CVec3& u, const CVec3& v);
double norm(const CVec3& v);
CVec3 apply_J(const CVec3& v);

/// R = -i p under the default convention.
CVec3 reeb(const SpherePoint& p, ReebSign sign = ReebSign::minus_i);
/// Same as reeb() without the unit-norm check; for near-unit positions.
CVec3 reeb_vector(const CVec3& p, ReebSign sign = ReebSign::minus_i);

/// alpha(v) = real_inner(v, R(p)). Throws ERR_NOT_TANGENT when
/// |real_inner(v, p)| > 1e-9.
double contact_form(const SpherePoint& p, const CVec3& v,
                    ReebSign sign = ReebSign::minus_i);

/// Contact-plane part v - alpha(v) R of a sphere-tangent vector.
CVec3 contact_projection(const SpherePoint& p, const CVec3& v,
                         ReebSign sign = ReebSign::minus_i);

/// J_S(v) = i (v - alpha(v) R) for R = -iF, negated for R = iF; kills R.
CVec3 apply_J_sphere(const SpherePoint& p, const CVec3& v,
                     ReebSign sign = ReebSign::minus_i);

/// Orthogonal projection of an ambient vector onto T_p S^5.
CVec3 sphere_tangent_projection(const CVec3& p, const CVec3& v);

// Finite-difference probes of the Sasakian structure along the great circle
// through p with velocity x. Both return the Euclidean norm of the defect.

/// |nabla_X R + J_S X|.
double sasakian_reeb_defect(const SpherePoint& p, const CVec3& x,
                            ReebSign sign = ReebSign::minus_i);
/// |(nabla_X J_S) Y - (g(X,Y) R - alpha(Y) X)|.
double sasakian_j_defect(const SpherePoint& p, const CVec3& x,
                         const CVec3& y, ReebSign sign = ReebSign::minus_i);

}  // namespace leglab
