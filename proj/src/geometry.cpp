#include "leglab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "leglab/error.hpp"

namespace leglab {

namespace {

CVec3 cvalue(const JVec3& v) { return value(v); }

double rvalue(const Jet2& j) { return j.value().real(); }

double partial(const Jet2& j, int a, int b) {
  return extract_partial(j, a, b).real();
}

// Chart basis -> orthonormal frame coefficients: e_a = E[a][i] F_i.
Mat2 frame_coefficients(const Metric& m) {
  const double g00 = m.g[0][0];
  const double s1 = 1.0 / std::sqrt(g00);
  const double s2 = std::sqrt(g00 / m.det);
  return {{{s1, 0.0}, {-m.g[0][1] / g00 * s2, s2}}};
}

}  // namespace

Mat2 value(const JMat2& m) {
  return {{{rvalue(m[0][0]), rvalue(m[0][1])},
           {rvalue(m[1][0]), rvalue(m[1][1])}}};
}

Jet2 rdot(const JVec3& u, const JVec3& v) {
  // Re(u conj v) = Re u Re v + Im u Im v, coefficient-wise real inputs.
  Jet2 acc(std::min(u[0].degree(), v[0].degree()));
  for (std::size_t k = 0; k < 3; ++k) {
    acc += real_part(u[k]) * real_part(v[k]) + imag_part(u[k]) * imag_part(v[k]);
  }
  return acc;
}

Metric first_fundamental(const JVec3& jets) {
  if (jets[0].degree() < 1) {
    throw Error(ErrorCode::order, "metric needs jets of degree >= 1");
  }
  const CVec3 fx = value(dx(jets));
  const CVec3 fy = value(dy(jets));
  Metric m;
  m.g[0][0] = real_inner(fx, fx);
  m.g[0][1] = m.g[1][0] = real_inner(fx, fy);
  m.g[1][1] = real_inner(fy, fy);
  m.det = m.g[0][0] * m.g[1][1] - m.g[0][1] * m.g[1][0];
  if (!(m.det > kDegenerateMetricDet)) {
    throw Error(ErrorCode::degenerate_metric,
                "metric determinant " + std::to_string(m.det) + " <= 1e-12");
  }
  m.g_inv[0][0] = m.g[1][1] / m.det;
  m.g_inv[1][1] = m.g[0][0] / m.det;
  m.g_inv[0][1] = m.g_inv[1][0] = -m.g[0][1] / m.det;
  return m;
}

double legendrian_defect(const JVec3& jets) {
  const CVec3 f = value(jets);
  const double a = std::abs(hermitian_inner(value(dx(jets)), f));
  const double b = std::abs(hermitian_inner(value(dy(jets)), f));
  return std::max(a, b) + std::abs(real_inner(f, f) - 1.0);
}

Frames frames(const JVec3& jets, const Metric& metric, ReebSign sign) {
  const CVec3 fx = value(dx(jets));
  const CVec3 fy = value(dy(jets));
  const Mat2 E = frame_coefficients(metric);
  Frames fr;
  fr.e1 = E[0][0] * fx;
  fr.e2 = E[1][0] * fx + E[1][1] * fy;
  fr.nu1 = apply_J(fr.e1);
  fr.nu2 = apply_J(fr.e2);
  fr.R = reeb_vector(value(jets), sign);
  return fr;
}

SurfaceJets surface_jets(const JVec3& F) {
  SurfaceJets s;
  s.degree = F[0].degree();
  if (s.degree < 1) {
    throw Error(ErrorCode::order, "surface pipeline needs degree >= 1");
  }
  s.F = F;
  s.dF = {dx(F), dy(F)};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) s.g[i][j] = rdot(s.dF[i], s.dF[j]);
  }
  s.det = s.g[0][0] * s.g[1][1] - s.g[0][1] * s.g[1][0];
  if (!(rvalue(s.det) > kDegenerateMetricDet)) {
    throw Error(ErrorCode::degenerate_metric,
                "metric determinant " + std::to_string(rvalue(s.det)) +
                    " <= 1e-12");
  }
  const Jet2 inv_det = 1.0 / s.det;
  s.g_inv[0][0] = s.g[1][1] * inv_det;
  s.g_inv[1][1] = s.g[0][0] * inv_det;
  s.g_inv[0][1] = -s.g[0][1] * inv_det;
  s.g_inv[1][0] = s.g_inv[0][1];
  if (s.degree < 2) return s;

  for (int i = 0; i < 2; ++i) {
    s.ddF[i][0] = dx(s.dF[i]);
    s.ddF[i][1] = dy(s.dF[i]);
  }
  // dg[k][i][j] = d_k g_ij
  std::array<JMat2, 2> dg;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      dg[0][i][j] = s.g[i][j].dx();
      dg[1][i][j] = s.g[i][j].dy();
    }
  }
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 2; ++i) {
      for (int j = i; j < 2; ++j) {
        Jet2 acc(s.degree - 2);
        for (int l = 0; l < 2; ++l) {
          acc += s.g_inv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
        }
        s.Gamma[k][i][j] = 0.5 * acc;
        s.Gamma[k][j][i] = s.Gamma[k][i][j];
      }
    }
  }
  for (int i = 0; i < 2; ++i) {
    for (int j = i; j < 2; ++j) {
      JVec3 b = s.ddF[i][j] + s.g[i][j] * s.F;
      for (int k = 0; k < 2; ++k) b -= s.Gamma[k][i][j] * s.dF[k];
      s.B[i][j] = b;
      s.B[j][i] = b;
    }
  }
  s.H = s.g_inv[0][0] * s.B[0][0] + (2.0 * s.g_inv[0][1]) * s.B[0][1] +
        s.g_inv[1][1] * s.B[1][1];
  const JVec3 JH = apply_J(s.H);
  const std::array<Jet2, 2> w = {rdot(JH, s.dF[0]), rdot(JH, s.dF[1])};
  for (int i = 0; i < 2; ++i) {
    s.a[i] = s.g_inv[i][0] * w[0] + s.g_inv[i][1] * w[1];
  }
  if (s.degree < 3) return s;

  s.div_JH = s.a[0].dx() + s.a[1].dy();
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) s.div_JH += s.Gamma[i][i][k] * s.a[k];
  }
  return s;
}

SecondFundamental second_fundamental(const SurfaceJets& sj, const Frames& fr) {
  if (sj.degree < 2) {
    throw Error(ErrorCode::order, "second fundamental form needs degree >= 2");
  }
  SecondFundamental sf;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) sf.B[i][j] = cvalue(sj.B[i][j]);
  }
  sf.H = cvalue(sj.H);
  const CVec3 fx = cvalue(sj.dF[0]);
  const CVec3 fy = cvalue(sj.dF[1]);
  const CVec3 ifx = apply_J(fx);
  const CVec3 ify = apply_J(fy);

  Metric m;
  m.g = value(sj.g);
  m.det = rvalue(sj.det);
  const Mat2 E = frame_coefficients(m);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      CVec3 acc{};
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) acc += (E[a][i] * E[b][j]) * sf.B[i][j];
      }
      sf.B_frame[a][b] = acc;
    }
  }
  const std::array<CVec3, 2> Je = {fr.nu1, fr.nu2};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) {
        sf.sigma[a][b][c] = real_inner(sf.B_frame[a][b], Je[c]);
      }
      sf.A_nu1[a][b] = real_inner(sf.B_frame[a][b], fr.nu1);
      sf.A_nu2[a][b] = real_inner(sf.B_frame[a][b], fr.nu2);
      sf.A_R[a][b] = real_inner(sf.B_frame[a][b], fr.R);
      sf.A_iFx[a][b] = real_inner(sf.B[a][b], ifx);
      sf.A_iFy[a][b] = real_inner(sf.B[a][b], ify);
      sf.A_nu1_chart[a][b] = real_inner(sf.B[a][b], fr.nu1);
      sf.A_nu2_chart[a][b] = real_inner(sf.B[a][b], fr.nu2);
      sf.B_norm_sq += real_inner(sf.B_frame[a][b], sf.B_frame[a][b]);
    }
  }
  sf.mu = {real_inner(sf.H, fr.nu1), real_inner(sf.H, fr.nu2)};
  sf.H_norm_sq = real_inner(sf.H, sf.H);
  return sf;
}

GaussCurvature gauss_curvature(const SurfaceJets& sj,
                               const SecondFundamental& sf) {
  if (sj.degree < 3) {
    throw Error(ErrorCode::order, "intrinsic curvature needs degree >= 3");
  }
  GaussCurvature gc;
  const auto& b = sf.B_frame;
  gc.kappa_gauss_eq =
      1.0 + real_inner(b[0][0], b[1][1]) - real_inner(b[0][1], b[0][1]);
  gc.claim_residual =
      std::abs(2.0 * gc.kappa_gauss_eq - 2.0 - sf.H_norm_sq + sf.B_norm_sq);

  // Brioschi formula with E = g_xx, F = g_xy, G = g_yy.
  const Jet2& Ej = sj.g[0][0];
  const Jet2& Fj = sj.g[0][1];
  const Jet2& Gj = sj.g[1][1];
  const double E = partial(Ej, 0, 0), F = partial(Fj, 0, 0),
               G = partial(Gj, 0, 0);
  const double Eu = partial(Ej, 1, 0), Ev = partial(Ej, 0, 1),
               Evv = partial(Ej, 0, 2);
  const double Fu = partial(Fj, 1, 0), Fv = partial(Fj, 0, 1),
               Fuv = partial(Fj, 1, 1);
  const double Gu = partial(Gj, 1, 0), Gv = partial(Gj, 0, 1),
               Guu = partial(Gj, 2, 0);
  auto det3 = [](const std::array<std::array<double, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const double d1 = det3({{{-0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev},
                           {Fv - 0.5 * Gu, E, F},
                           {0.5 * Gv, F, G}}});
  const double d2 = det3({{{0.0, 0.5 * Ev, 0.5 * Gu},
                           {0.5 * Ev, E, F},
                           {0.5 * Gu, F, G}}});
  const double w = E * G - F * F;
  gc.kappa_intrinsic = (d1 - d2) / (w * w);
  return gc;
}

double sigma_symmetry_defect(
    const std::array<std::array<std::array<double, 2>, 2>, 2>& s) {
  double worst = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        const double v = s[i][j][k];
        for (double w : {s[i][k][j], s[j][i][k], s[j][k][i], s[k][i][j],
                         s[k][j][i]}) {
          worst = std::max(worst, std::abs(v - w));
        }
      }
    }
  }
  return worst;
}

PointFrame make_point_frame(const SurfaceJets& sj, double x, double y,
                            ReebSign sign) {
  PointFrame pf;
  pf.x = x;
  pf.y = y;
  pf.F = cvalue(sj.F);
  pf.Fx = cvalue(sj.dF[0]);
  pf.Fy = cvalue(sj.dF[1]);
  pf.Fxx = cvalue(sj.ddF[0][0]);
  pf.Fxy = cvalue(sj.ddF[0][1]);
  pf.Fyy = cvalue(sj.ddF[1][1]);
  pf.metric = first_fundamental(sj.F);
  for (int k = 0; k < 2; ++k) pf.Gamma[k] = value(sj.Gamma[k]);
  pf.frame = frames(sj.F, pf.metric, sign);
  pf.sf = second_fundamental(sj, pf.frame);
  pf.curvature = gauss_curvature(sj, pf.sf);

  pf.unit_norm_defect = std::abs(norm(pf.F) - 1.0);
  pf.tangency_defect = std::max(std::abs(real_inner(pf.Fx, pf.F)),
                                std::abs(real_inner(pf.Fy, pf.F)));
  pf.legendrian_defect = legendrian_defect(sj.F);
  pf.sigma_symmetry = sigma_symmetry_defect(pf.sf.sigma);
  double ar = std::abs(real_inner(pf.sf.H, pf.frame.R));
  for (const auto& row : pf.sf.A_R) {
    for (double v : row) ar = std::max(ar, std::abs(v));
  }
  pf.reeb_orthogonality = ar;
  double nd = 0.0;
  for (const auto& row : pf.sf.B) {
    for (const CVec3& b : row) {
      nd = std::max({nd, std::abs(real_inner(b, pf.frame.e1)),
                     std::abs(real_inner(b, pf.frame.e2)),
                     std::abs(real_inner(b, pf.F))});
    }
  }
  pf.normal_defect = nd;
  return pf;
}

PointFrame point_report(const ImmersionSpec& spec, double x, double y,
                        ReebSign sign) {
  const SurfaceJets sj = surface_jets(evaluate_jet(spec, x, y, 3));
  return make_point_frame(sj, x, y, sign);
}

}  // namespace leglab
