#include "leglab/ambient.hpp"

#include <cmath>

#include "leglab/error.hpp"
#include "leglab/finite_difference.hpp"

namespace leglab {

SpherePoint::SpherePoint(const CVec3& p) : p_(p) {
  const double n2 = real_inner(p, p);
  if (std::abs(n2 - 1.0) > 1e-12) {
    throw Error(ErrorCode::not_on_sphere,
                "|p|^2 = " + std::to_string(n2) + " is not 1");
  }
}

Complex hermitian_inner(const CVec3& u, const CVec3& v) {
  return u[0] * std::conj(v[0]) + u[1] * std::conj(v[1]) +
         u[2] * std::conj(v[2]);
}

double real_inner(const CVec3& u, const CVec3& v) {
  double s = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    s += u[k].real() * v[k].real() + u[k].imag() * v[k].imag();
  }
  return s;
}

double norm(const CVec3& v) { return std::sqrt(real_inner(v, v)); }

CVec3 apply_J(const CVec3& v) { return kI * v; }

CVec3 reeb_vector(const CVec3& p, ReebSign sign) {
  return (sign == ReebSign::minus_i ? -kI : kI) * p;
}

CVec3 reeb(const SpherePoint& p, ReebSign sign) {
  return reeb_vector(p.vec(), sign);
}

double contact_form(const SpherePoint& p, const CVec3& v, ReebSign sign) {
  const double radial = real_inner(v, p.vec());
  if (std::abs(radial) > 1e-9) {
    throw Error(ErrorCode::not_tangent,
                "vector has radial component " + std::to_string(radial));
  }
  return real_inner(v, reeb(p, sign));
}

CVec3 contact_projection(const SpherePoint& p, const CVec3& v, ReebSign sign) {
  return v - contact_form(p, v, sign) * reeb(p, sign);
}

CVec3 apply_J_sphere(const SpherePoint& p, const CVec3& v, ReebSign sign) {
  const CVec3 jv = apply_J(contact_projection(p, v, sign));
  return sign == ReebSign::minus_i ? jv : -1.0 * jv;
}

CVec3 sphere_tangent_projection(const CVec3& p, const CVec3& v) {
  return v - real_inner(v, p) * p;
}

namespace {

// Unit-speed-scaled great circle through p with initial velocity x (x tangent).
struct GreatCircle {
  CVec3 p;
  CVec3 dir;
  double speed;

  GreatCircle(const CVec3& p0, const CVec3& x)
      : p(p0), dir(x), speed(norm(x)) {
    if (speed > 0.0) dir = (1.0 / speed) * x;
  }

  CVec3 at(double t) const {
    return std::cos(speed * t) * p + std::sin(speed * t) * dir;
  }
};

// Covariant derivative on the sphere of a vector field V along the curve:
// ambient derivative followed by tangent projection at the base point.
template <class Field>
CVec3 sphere_covariant(const GreatCircle& c, Field&& field) {
  const CVec3 d = richardson_derivative<CVec3>(
      [&](double t) { return field(c.at(t)); }, 0.0, fd_step(0.0));
  return sphere_tangent_projection(c.p, d);
}

}  // namespace

double sasakian_reeb_defect(const SpherePoint& p, const CVec3& x,
                            ReebSign sign) {
  const CVec3 xt = sphere_tangent_projection(p.vec(), x);
  const GreatCircle curve(p.vec(), xt);
  const CVec3 lhs = sphere_covariant(
      curve, [&](const CVec3& q) { return reeb_vector(q, sign); });
  return norm(lhs + apply_J_sphere(p, xt, sign));
}

double sasakian_j_defect(const SpherePoint& p, const CVec3& x, const CVec3& y,
                         ReebSign sign) {
  const CVec3 xt = sphere_tangent_projection(p.vec(), x);
  const CVec3 y0 = sphere_tangent_projection(p.vec(), y);
  const GreatCircle curve(p.vec(), xt);

  // Y extended along the curve by re-projecting the constant vector y0.
  auto y_field = [&](const CVec3& q) {
    return sphere_tangent_projection(q, y0);
  };
  auto jy_field = [&](const CVec3& q) {
    const CVec3 r = reeb_vector(q, sign);
    const CVec3 yq = y_field(q);
    const CVec3 jy = apply_J(yq - real_inner(yq, r) * r);
    return sign == ReebSign::minus_i ? jy : -1.0 * jy;
  };

  const CVec3 nabla_jy = sphere_covariant(curve, jy_field);
  const CVec3 nabla_y = sphere_covariant(curve, y_field);
  const CVec3 lhs = nabla_jy - apply_J_sphere(p, nabla_y, sign);

  const CVec3 r = reeb(p, sign);
  const CVec3 rhs = real_inner(xt, y0) * r - contact_form(p, y0, sign) * xt;
  return norm(lhs - rhs);
}

}  // namespace leglab
