#include <doctest.h>

#include "leglab/ambient.hpp"
#include "leglab/error.hpp"
#include "leglab/geometry.hpp"
#include "leglab/surfaces.hpp"
#include "support.hpp"

using namespace leglab;
using namespace testsupport;

TEST_SUITE("ambient") {

TEST_CASE("hermitian inner product") {
  const CVec3 e1{{1.0, 0.0, 0.0}};
  const CVec3 ie1{{kI, 0.0, 0.0}};
  CHECK(hermitian_inner(e1, e1) == Complex(1.0));
  CHECK(hermitian_inner(ie1, e1) == kI);
  // conjugate linear in the second slot
  CHECK(hermitian_inner(e1, ie1) == -kI);

  const PointFrame pf = point_report(mironov(1, 2, 1), 0.3, 0.7);
  const Complex fx = hermitian_inner(pf.Fx, pf.F);
  CHECK(std::abs(fx.real()) < 1e-14);
  CHECK(std::abs(fx.imag()) < 1e-14);
}

TEST_CASE("real inner product") {
  const CVec3 e1{{1.0, 0.0, 0.0}};
  const CVec3 ie1{{kI, 0.0, 0.0}};
  const CVec3 w{{Complex(1, 1), 0.0, 0.0}};
  CHECK(real_inner(ie1, e1) == 0.0);
  CHECK(real_inner(w, w) == doctest::Approx(2.0).epsilon(1e-15));
  for (int n = 0; n < 200; ++n) {
    const CVec3 u = random_cvec(), v = random_cvec();
    CHECK(std::abs(real_inner(apply_J(u), apply_J(v)) - real_inner(u, v)) < 1e-14);
  }
}

TEST_CASE("J is a complex structure") {
  const CVec3 e1{{1.0, 0.0, 0.0}};
  CHECK(apply_J(e1)[0] == kI);
  for (int n = 0; n < 100; ++n) {
    const CVec3 v = random_cvec();
    CHECK(dist(apply_J(apply_J(v)), -v) < 1e-15);
  }
}

TEST_CASE("J H is tangent on the Calabi torus") {
  for (int n = 0; n < 20; ++n) {
    const PointFrame pf = point_report(calabi(), uniform(0, 6.28), uniform(0, 6.28));
    const CVec3 jh = apply_J(pf.sf.H);
    const double normal = std::hypot(real_inner(jh, pf.frame.nu1), real_inner(jh, pf.frame.nu2),
                                     real_inner(jh, pf.frame.R));
    CHECK(normal < 1e-12);
  }
}

TEST_CASE("Reeb field") {
  const SpherePoint p(CVec3{{1.0, 0.0, 0.0}});
  const CVec3 r = reeb(p);
  CHECK(r[0] == -kI);
  CHECK(reeb(p, ReebSign::plus_i)[0] == kI);
  for (int n = 0; n < 100; ++n) {
    const SpherePoint q(random_unit());
    CHECK(std::abs(norm(reeb(q)) - 1.0) < 1e-15);
    CHECK(std::abs(real_inner(reeb(q), q.vec())) < 1e-15);
  }
}

TEST_CASE("sphere point rejects non-unit vectors") {
  CHECK_THROWS_AS(SpherePoint(CVec3{{2.0, 0.0, 0.0}}), Error);
}

TEST_CASE("contact form") {
  const SpherePoint p(random_unit());
  CHECK(contact_form(p, reeb(p)) == doctest::Approx(1.0).epsilon(1e-15));

  const ImmersionSpec c = calabi();
  for (int n = 0; n < 20; ++n) {
    const PointFrame pf = point_report(c, uniform(0, 6.28), uniform(0, 6.28));
    const SpherePoint q(pf.F);
    CHECK(std::abs(contact_form(q, pf.Fx)) < 1e-14);
    CHECK(std::abs(contact_form(q, apply_J(pf.Fx))) < 1e-14);
  }
}

TEST_CASE("contact form rejects non-tangent vectors") {
  const SpherePoint p(CVec3{{1.0, 0.0, 0.0}});
  try {
    contact_form(p, CVec3{{1.0, 0.0, 0.0}});
    FAIL("expected ERR_NOT_TANGENT");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_tangent);
  }
}

TEST_CASE("contact decomposition reconstructs the vector") {
  for (int n = 0; n < 200; ++n) {
    const SpherePoint p(random_unit());
    const CVec3 v = sphere_tangent_projection(p.vec(), random_cvec());
    const CVec3 h = contact_projection(p, v);
    CHECK(std::abs(contact_form(p, h)) < 1e-14);
    CHECK(dist(h + contact_form(p, v) * reeb(p), v) < 1e-13);
  }
}

TEST_CASE("Sasakian identities by finite differences") {
  for (int n = 0; n < 50; ++n) {
    const SpherePoint p(random_unit());
    const CVec3 x = sphere_tangent_projection(p.vec(), random_cvec());
    const CVec3 y = sphere_tangent_projection(p.vec(), random_cvec());
    CHECK(sasakian_reeb_defect(p, x) < 1e-6);
    CHECK(sasakian_j_defect(p, x, y) < 1e-6);
    CHECK(sasakian_reeb_defect(p, x, ReebSign::plus_i) < 1e-6);
    CHECK(sasakian_j_defect(p, x, y, ReebSign::plus_i) < 1e-6);
  }
}

}  // TEST_SUITE
