#include "leglab/operators.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "leglab/error.hpp"

namespace leglab {

namespace {

constexpr double kCslPointTol = 1e-7;
constexpr double kLogMinH = 1e-3;
constexpr double kTangentTol = 1e-10;

double rv(const Jet2& j) { return j.value().real(); }
double pd(const Jet2& j, int a, int b) { return extract_partial(j, a, b).real(); }
Jet2 d(const Jet2& j, int k) { return k == 0 ? j.dx() : j.dy(); }
JVec3 d(const JVec3& v, int k) { return k == 0 ? dx(v) : dy(v); }

double tangent_norm(const Mat2& g, const std::array<double, 2>& v) {
  double s = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) s += g[i][j] * v[i] * v[j];
  }
  return std::sqrt(std::max(s, 0.0));
}

// Chart components of the tangential part of an ambient vector.
std::array<double, 2> tangential(const Mat2& g_inv, const CVec3& fx,
                                 const CVec3& fy, const CVec3& v) {
  const double w0 = real_inner(v, fx);
  const double w1 = real_inner(v, fy);
  return {g_inv[0][0] * w0 + g_inv[0][1] * w1,
          g_inv[1][0] * w0 + g_inv[1][1] * w1};
}

// Pieces of the Willmore operator at the expansion point of a pipeline.
struct WillmoreParts {
  double div = 0.0;
  std::array<double, 2> grad_div{};  // g^{ij} d_j Div(JH)
  CVec3 B_JH_JH{};
  CVec3 braces{};
};

WillmoreParts willmore_parts(const SurfaceJets& sj, ReebSign sign) {
  WillmoreParts w;
  w.div = rv(sj.div_JH);
  const Mat2 gi = value(sj.g_inv);
  const std::array<double, 2> dd = {pd(sj.div_JH, 1, 0), pd(sj.div_JH, 0, 1)};
  for (int i = 0; i < 2; ++i) w.grad_div[i] = gi[i][0] * dd[0] + gi[i][1] * dd[1];
  const CVec3 fx = value(sj.dF[0]);
  const CVec3 fy = value(sj.dF[1]);
  const CVec3 grad_amb = w.grad_div[0] * fx + w.grad_div[1] * fy;
  const std::array<double, 2> a = {rv(sj.a[0]), rv(sj.a[1])};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) w.B_JH_JH += (a[i] * a[j]) * value(sj.B[i][j]);
  }
  const CVec3 H = value(sj.H);
  const CVec3 R = reeb_vector(value(sj.F), sign);
  w.braces = -apply_J(grad_amb) + w.B_JH_JH - (0.5 * real_inner(H, H)) * H -
             (2.0 * w.div) * R;
  return w;
}

// Samples shared by every finite-difference route at one stencil point.
std::vector<double> stencil_sample(const ImmersionSpec& spec, double x,
                                   double y, ReebSign sign) {
  const SurfaceJets sj = surface_jets(evaluate_jet_local(spec, x, y, 4));
  const double sd = std::sqrt(rv(sj.det));
  const WillmoreParts w = willmore_parts(sj, sign);
  const CVec3 H = value(sj.H);
  const CVec3 field = 0.5 * apply_J(w.braces) - 2.0 * apply_J(H);
  const auto t = tangential(value(sj.g_inv), value(sj.dF[0]),
                            value(sj.dF[1]), field);
  const double a0 = rv(sj.a[0]);
  const double a1 = rv(sj.a[1]);
  return {sd * w.grad_div[0], sd * w.grad_div[1], sd * t[0], sd * t[1],
          sd * a0,            sd * a1,            a0,        a1};
}

double sqrt_det_at(const ImmersionSpec& spec, double x, double y) {
  return std::sqrt(first_fundamental(evaluate_jet_local(spec, x, y, 1)).det);
}

// Normal projection (normal to the surface inside the sphere) with jets.
JVec3 normal_part(const JVec3& v, const SurfaceJets& sj) {
  JVec3 out = v - rdot(v, sj.F) * sj.F;
  std::array<Jet2, 2> w = {rdot(v, sj.dF[0]), rdot(v, sj.dF[1])};
  for (int k = 0; k < 2; ++k) {
    out -= (sj.g_inv[k][0] * w[0] + sj.g_inv[k][1] * w[1]) * sj.dF[k];
  }
  return out;
}

CVec3 normal_part(const CVec3& v, const CVec3& F, const Mat2& g_inv,
                  const CVec3& fx, const CVec3& fy) {
  const auto t = tangential(g_inv, fx, fy, v);
  return v - real_inner(v, F) * F - t[0] * fx - t[1] * fy;
}

double sasakian_defect(const CVec3& F, const Frames& fr, ReebSign sign) {
  const double n = norm(F);
  const SpherePoint p((1.0 / n) * F);
  double worst = 0.0;
  for (const CVec3& x : {fr.e1, fr.e2}) {
    worst = std::max(worst, sasakian_reeb_defect(p, x, sign));
    for (const CVec3& y : {fr.e1, fr.e2, fr.R}) {
      worst = std::max(worst, sasakian_j_defect(p, x, y, sign));
    }
  }
  return worst;
}

double codazzi_defect(const SurfaceJets& sj) {
  // Chart components sigma_ijk = <B_ij, J F_k> and their covariant
  // derivatives nabla_l sigma_ijk.
  std::array<std::array<std::array<Jet2, 2>, 2>, 2> s;
  const std::array<JVec3, 2> jf = {apply_J(sj.dF[0]), apply_J(sj.dF[1])};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) s[i][j][k] = rdot(sj.B[i][j], jf[k]);
    }
  }
  std::array<Mat2, 2> G{value(sj.Gamma[0]), value(sj.Gamma[1])};
  double ns[2][2][2][2];
  for (int l = 0; l < 2; ++l) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) {
          double v = rv(d(s[i][j][k], l));
          for (int m = 0; m < 2; ++m) {
            v -= G[m][l][i] * rv(s[m][j][k]) + G[m][l][j] * rv(s[i][m][k]) +
                 G[m][l][k] * rv(s[i][j][m]);
          }
          ns[l][i][j][k] = v;
        }
      }
    }
  }
  double worst = 0.0;
  for (int q = 0; q < 16; ++q) {
    std::array<int, 4> idx = {(q >> 3) & 1, (q >> 2) & 1, (q >> 1) & 1, q & 1};
    const double v = ns[idx[0]][idx[1]][idx[2]][idx[3]];
    std::array<int, 4> p = idx;
    std::sort(p.begin(), p.end());
    do {
      worst = std::max(worst, std::abs(v - ns[p[0]][p[1]][p[2]][p[3]]));
    } while (std::next_permutation(p.begin(), p.end()));
  }
  return worst;
}

}  // namespace

void check_stencil_room(const ImmersionSpec& spec, double x, double y,
                        double step_base, int levels) {
  const ChartDomain& dom = spec.domain();
  auto reach = [&](double c) {
    double r = 0.0;
    for (int l = 0; l < levels; ++l) {
      r += kStencilReach * fd_step(std::abs(c) + r, step_base);
    }
    return r;
  };
  if (!dom.periodic_x) {
    const double r = reach(x);
    if (x - r < dom.x_min || x + r > dom.x_max) {
      throw Error(ErrorCode::stencil_out_of_domain,
                  "stencil around x = " + std::to_string(x) +
                      " leaves the chart");
    }
  }
  if (!dom.periodic_y) {
    const double r = reach(y);
    if (y - r < dom.y_min || y + r > dom.y_max) {
      throw Error(ErrorCode::stencil_out_of_domain,
                  "stencil around y = " + std::to_string(y) +
                      " leaves the chart");
    }
  }
}

double divergence(const ImmersionSpec& spec, const TangentField& field,
                  double x, double y, double step_base) {
  check_stencil_room(spec, x, y, step_base);
  const Stencil2D st(
      x, y,
      [&](double px, double py) {
        const double sd = sqrt_det_at(spec, px, py);
        const auto a = field(px, py);
        return std::vector<double>{sd * a[0], sd * a[1]};
      },
      step_base);
  return (st.d_dx()[0] + st.d_dy()[1]) / sqrt_det_at(spec, x, y);
}

std::array<double, 2> gradient(const ImmersionSpec& spec, const ScalarField& f,
                               double x, double y, double step_base) {
  check_stencil_room(spec, x, y, step_base);
  const Stencil2D st(
      x, y, [&](double px, double py) { return std::vector<double>{f(px, py)}; },
      step_base);
  const double fx = st.d_dx()[0];
  const double fy = st.d_dy()[0];
  const Metric m = first_fundamental(evaluate_jet_local(spec, x, y, 1));
  return {m.g_inv[0][0] * fx + m.g_inv[0][1] * fy,
          m.g_inv[1][0] * fx + m.g_inv[1][1] * fy};
}

double laplace_beltrami(const ImmersionSpec& spec, const ScalarField& f,
                        double x, double y, double step_base) {
  check_stencil_room(spec, x, y, step_base, 2);
  return divergence(
      spec,
      [&](double px, double py) { return gradient(spec, f, px, py, step_base); },
      x, y, step_base);
}

Mat2 covariant_derivative(const ImmersionSpec& spec, const TangentField& field,
                          double x, double y, double step_base) {
  check_stencil_room(spec, x, y, step_base);
  const Stencil2D st(
      x, y,
      [&](double px, double py) {
        const auto a = field(px, py);
        return std::vector<double>{a[0], a[1]};
      },
      step_base);
  const SurfaceJets sj = surface_jets(evaluate_jet_local(spec, x, y, 2));
  const auto a = field(x, y);
  const auto ddx = st.d_dx();
  const auto ddy = st.d_dy();
  Mat2 out{};
  for (int i = 0; i < 2; ++i) {
    const auto& di = (i == 0) ? ddx : ddy;
    for (int j = 0; j < 2; ++j) {
      double v = di[static_cast<std::size_t>(j)];
      for (int k = 0; k < 2; ++k) v += rv(sj.Gamma[j][i][k]) * a[k];
      out[i][j] = v;
    }
  }
  return out;
}

namespace {

std::array<double, 2> jh_components(const SurfaceJets& sj) {
  const std::array<double, 2> a = {rv(sj.a[0]), rv(sj.a[1])};
  const CVec3 jh = apply_J(value(sj.H));
  const CVec3 t = a[0] * value(sj.dF[0]) + a[1] * value(sj.dF[1]);
  const double off = norm(jh - t);
  if (off > kTangentTol * std::max(1.0, norm(jh))) {
    throw Error(ErrorCode::not_tangent,
                "JH leaves the tangent plane by " + std::to_string(off));
  }
  return a;
}

}  // namespace

std::array<double, 2> field_JH(const ImmersionSpec& spec, double x, double y) {
  return jh_components(surface_jets(evaluate_jet(spec, x, y, 2)));
}

TangentField jh_field(const ImmersionSpec& spec) {
  return [spec](double x, double y) {
    return jh_components(surface_jets(evaluate_jet_local(spec, x, y, 2)));
  };
}

NablaJH nabla_JH_pack(const ImmersionSpec& spec, double x, double y) {
  const PointEvaluation pe = evaluate_point(spec, x, y, {}, false);
  return {pe.nabla_JH, pe.nabla_JH_norm_sq};
}

CVec3 willmore_operator(const ImmersionSpec& spec, double x, double y,
                        const EvalOptions& opts) {
  return evaluate_point(spec, x, y, opts, false).W;
}

double residual_willmore_legendrian(const ImmersionSpec& spec, double x,
                                    double y, const EvalOptions& opts) {
  return evaluate_point(spec, x, y, opts, false).willmore_legendrian;
}

CslWillmoreResidual residual_csl_willmore(const ImmersionSpec& spec, double x,
                                          double y, const EvalOptions& opts) {
  return evaluate_point(spec, x, y, opts, true).csl_willmore;
}

double obstruction_trace(const ImmersionSpec& spec, double x, double y) {
  return evaluate_point(spec, x, y, {}, false).obstruction;
}

PointEvaluation evaluate_point(const ImmersionSpec& spec, double x, double y,
                               const EvalOptions& opts, bool with_stencil) {
  const auto [xc, yc] = wrap_to_chart(spec, x, y);
  const SurfaceJets sj = surface_jets(evaluate_jet_local(spec, xc, yc, 4));

  PointEvaluation pe;
  pe.frame = make_point_frame(sj, xc, yc, opts.reeb);
  const PointFrame& pf = pe.frame;
  const Mat2& g = pf.metric.g;
  const Mat2& gi = pf.metric.g_inv;
  const auto& G = pf.Gamma;
  const CVec3& F = pf.F;
  const std::array<CVec3, 2> Fd = {pf.Fx, pf.Fy};
  const CVec3& H = pf.sf.H;
  const CVec3& R = pf.frame.R;
  const double H2 = pf.sf.H_norm_sq;
  const double kappa = pf.curvature.kappa_gauss_eq;

  pe.a = jh_components(sj);
  const auto& a = pe.a;
  pe.H_norm = std::sqrt(H2);

  const WillmoreParts wp = willmore_parts(sj, opts.reeb);
  pe.div_JH = wp.div;

  // nabla_i a^j as first-order jets, then their covariant derivatives.
  std::array<std::array<Jet2, 2>, 2> N;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Jet2 v = d(sj.a[j], i);
      for (int k = 0; k < 2; ++k) v += sj.Gamma[j][i][k] * sj.a[k];
      N[i][j] = v;
      pe.nabla_JH[i][j] = rv(v);
    }
  }
  const Mat2& NJ = pe.nabla_JH;
  double nn = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) nn += g[j][l] * gi[i][k] * NJ[i][j] * NJ[k][l];
      }
    }
  }
  pe.nabla_JH_norm_sq = nn;

  // Rough Laplacian of JH: g^{ki} nabla_k nabla_i a^j.
  std::array<double, 2> lap_jh{};
  for (int j = 0; j < 2; ++j) {
    double s = 0.0;
    for (int k = 0; k < 2; ++k) {
      for (int i = 0; i < 2; ++i) {
        double v = rv(d(N[i][j], k));
        for (int l = 0; l < 2; ++l) {
          v += -G[l][k][i] * NJ[l][j] + G[j][k][l] * NJ[i][l];
        }
        s += gi[k][i] * v;
      }
    }
    lap_jh[j] = s;
  }

  // Ricci identity: Lap(JH) = grad Div(JH) + kappa JH.
  {
    std::array<double, 2> r{};
    for (int j = 0; j < 2; ++j) r[j] = lap_jh[j] - wp.grad_div[j] - kappa * a[j];
    pe.ricci = tangent_norm(g, r);
  }

  // Willmore operator and the rewritten (normal-Laplacian) form.
  pe.W = 0.5 * wp.braces;
  pe.willmore_legendrian = norm(wp.braces);
  pe.willmore_reeb = std::abs(real_inner(pe.W, R) + pe.div_JH);

  CVec3 lap_nu_H{};
  {
    std::array<JVec3, 2> Nn = {normal_part(d(sj.H, 0), sj),
                               normal_part(d(sj.H, 1), sj)};
    std::array<CVec3, 2> Nv = {value(Nn[0]), value(Nn[1])};
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        CVec3 v = normal_part(value(d(Nn[j], i)), F, gi, Fd[0], Fd[1]);
        for (int k = 0; k < 2; ++k) v -= G[k][i][j] * Nv[k];
        lap_nu_H += gi[i][j] * v;
      }
    }
  }
  const CVec3 lap_jh_amb = lap_jh[0] * Fd[0] + lap_jh[1] * Fd[1];
  pe.normal_laplacian =
      norm(lap_nu_H + apply_J(lap_jh_amb) + H + (2.0 * pe.div_JH) * R);
  {
    CVec3 quad{};
    const auto& B = pf.sf.B;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        double c = 0.0;
        for (int k = 0; k < 2; ++k) {
          for (int l = 0; l < 2; ++l) {
            c += gi[i][k] * gi[j][l] * real_inner(B[k][l], H);
          }
        }
        quad += c * B[i][j];
      }
    }
    const CVec3 rewritten = lap_nu_H + quad - (0.5 * H2) * H;
    pe.willmore_forms_diff = norm(rewritten - wp.braces);
  }

  // Obstruction trace g^{ik} (nabla_k a^l) <B_il, H>.
  {
    double t = 0.0;
    for (int i = 0; i < 2; ++i) {
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
          t += gi[i][k] * NJ[k][l] * real_inner(pf.sf.B[i][l], H);
        }
      }
    }
    pe.obstruction = t;
  }

  // |H|^2 as a jet: Laplacian, gradient and log variant.
  const Jet2 s = rdot(sj.H, sj.H);
  auto laplacian_of = [&](const Jet2& f) {
    double v = 0.0;
    const double fk[2] = {pd(f, 1, 0), pd(f, 0, 1)};
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        double h = pd(f, (i == 0) + (j == 0), (i == 1) + (j == 1));
        for (int k = 0; k < 2; ++k) h -= G[k][i][j] * fk[k];
        v += gi[i][j] * h;
      }
    }
    return v;
  };
  const double lap_s = laplacian_of(s);
  const double ds_along_jh = a[0] * pd(s, 1, 0) + a[1] * pd(s, 0, 1);

  // Div(J B(JH,JH)) identity.
  {
    JVec3 bjj{};
    for (std::size_t k = 0; k < 3; ++k) bjj[k] = Jet2(sj.B[0][0][0].degree());
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) bjj += (sj.a[i] * sj.a[j]) * sj.B[i][j];
    }
    const JVec3 jb = apply_J(bjj);
    const std::array<Jet2, 2> w = {rdot(jb, sj.dF[0]), rdot(jb, sj.dF[1])};
    std::array<Jet2, 2> c;
    for (int i = 0; i < 2; ++i) c[i] = sj.g_inv[i][0] * w[0] + sj.g_inv[i][1] * w[1];
    double div_c = rv(c[0].dx()) + rv(c[1].dy());
    for (int i = 0; i < 2; ++i) {
      for (int k = 0; k < 2; ++k) div_c += G[i][i][k] * rv(c[k]);
    }
    pe.div_jb = std::abs(div_c - 2.0 * pe.obstruction - 0.5 * ds_along_jh);
  }

  // Bochner, in the form valid for csL surfaces.
  pe.bochner = std::abs(0.5 * lap_s - pe.nabla_JH_norm_sq - kappa * H2);

  if (pe.H_norm >= kLogMinH) {
    const Jet2 L = 0.5 * log(s);
    pe.log_laplacian = std::abs(laplacian_of(L) - kappa);
  }

  pe.codazzi = codazzi_defect(sj);
  {
    const JVec3 jh = apply_J(sj.H);
    const Jet2 w0 = rdot(jh, sj.dF[0]);
    const Jet2 w1 = rdot(jh, sj.dF[1]);
    pe.closedness = std::abs(pd(w1, 1, 0) - pd(w0, 0, 1));
  }
  pe.sasakian = sasakian_defect(F, pf.frame, opts.reeb);

  if (with_stencil) {
    check_stencil_room(spec, xc, yc, opts.step_base);
    const Stencil2D st(
        xc, yc,
        [&](double px, double py) {
          return stencil_sample(spec, px, py, opts.reeb);
        },
        opts.step_base);
    const auto sx = st.d_dx();
    const auto sy = st.d_dy();
    const double sd = std::sqrt(pf.metric.det);
    pe.lap_div_JH = (sx[0] + sy[1]) / sd;
    const double direct = (sx[2] + sy[3]) / sd;
    pe.div_JH_fd = (sx[4] + sy[5]) / sd;
    double nd = 0.0;
    for (int i = 0; i < 2; ++i) {
      const auto& di = (i == 0) ? sx : sy;
      for (int j = 0; j < 2; ++j) {
        double v = di[6 + static_cast<std::size_t>(j)];
        for (int k = 0; k < 2; ++k) v += G[j][i][k] * a[k];
        nd = std::max(nd, std::abs(v - NJ[i][j]));
      }
    }
    pe.nabla_route_diff = nd;
    pe.csl_willmore.expanded = pe.lap_div_JH + 2.0 * pe.obstruction -
                               0.5 * H2 * pe.div_JH - 4.0 * pe.div_JH;
    pe.csl_willmore.direct = direct;
  }
  return pe;
}

// ------------------------------------------------------------------ reports

const std::vector<CheckSpec>& check_catalog() {
  using S = CheckScope;
  static const std::vector<CheckSpec> catalog = {
      {"legendrian_defect", "max_i |<F_i,F>| + |<F,F> - 1|", 1e-12, S::always, false},
      {"csl", "|Div(JH)|", 1e-7, S::always, false},
      {"csl_fd_route", "|Div(JH) exact - Div(JH) by differences|", 1e-7, S::always, true},
      {"nabla_fd_route", "max |nabla(JH) exact - nabla(JH) by differences|", 1e-7, S::always, true},
      {"mean_curvature_norm", "|H|", 1e-10, S::informational, false},
      {"willmore_legendrian", "|-J grad Div(JH) + B(JH,JH) - |H|^2 H/2 - 2 Div(JH) R|", 1e-6, S::informational, false},
      {"csl_willmore", "|Lap Div(JH) + 2 tr<B(.,nabla.(JH)),H> - |H|^2 Div(JH)/2 - 4 Div(JH)|", 1e-5, S::always, true},
      {"csl_willmore_forms", "|expanded form - 2 Div(J W - 2 JH)|", 1e-4, S::always, true},
      {"obstruction_trace", "|tr<B(.,nabla.(JH)),H>|", 1e-6, S::always, false},
      {"sigma_symmetry", "max_perm |sigma_ijk - sigma_perm(ijk)|", 1e-11, S::always, false},
      {"reeb_orthogonality", "max(|<H,R>|, |A^R|)", 1e-11, S::always, false},
      {"normal_frame", "max |<B_ij,e_k>|, |<B_ij,F>|", 1e-11, S::always, false},
      {"claim", "|2 kappa - 2 - |H|^2 + |B|^2|", 1e-10, S::always, false},
      {"gauss_brioschi", "|kappa (Gauss equation) - kappa (Brioschi)|", 1e-7, S::always, false},
      {"ricci_identity", "|Lap(JH) - grad Div(JH) - kappa JH|", 1e-5, S::always, false},
      {"normal_laplacian_identity", "|Lap^nu H + J Lap(JH) + H + 2 Div(JH) R|", 1e-4, S::always, false},
      {"div_jb_identity", "|Div(J B(JH,JH)) - 2 tr<B(.,nabla.(JH)),H> - nabla_JH |H|^2 / 2|", 1e-5, S::always, false},
      {"bochner", "|Lap|H|^2 / 2 - |nabla(JH)|^2 - kappa |JH|^2| (csL points)", 1e-5, S::csl_points, false},
      {"log_laplacian", "|Lap log|H| - kappa| (csL points, |H| >= 1e-3)", 1e-5, S::log_points, false},
      {"codazzi", "max_perm |nabla_l sigma_ijk - nabla_perm|", 1e-6, S::always, false},
      {"closedness", "|d_x w_y - d_y w_x|, w_i = <JH, F_i>", 1e-6, S::always, false},
      {"sasakian", "max(|nabla_X R + J X|, |(nabla_X J)Y - g(X,Y) R + alpha(Y) X|)", 1e-6, S::always, false},
      {"willmore_operator_forms", "|Lap^nu H + sum <A^a,A^H> nu_a - |H|^2 H/2 - braces|", 1e-8, S::always, false},
      {"willmore_reeb", "|<W,R> + Div(JH)|", 1e-10, S::always, false},
  };
  return catalog;
}

std::optional<std::size_t> find_check(std::string_view name) {
  const auto& cat = check_catalog();
  for (std::size_t q = 0; q < cat.size(); ++q) {
    if (cat[q].name == name) return q;
  }
  return std::nullopt;
}

Aggregates CheckSeries::aggregates() const {
  Aggregates agg;
  double sum_sq = 0.0;
  for (const auto& v : values) {
    if (!v) {
      ++agg.skipped;
      continue;
    }
    ++agg.count;
    if (!std::isnan(agg.max) && (std::isnan(*v) || *v > agg.max)) agg.max = *v;
    sum_sq += *v * *v;
  }
  if (agg.count > 0) agg.rms = std::sqrt(sum_sq / static_cast<double>(agg.count));
  return agg;
}

std::size_t ResidualReport::evaluated_points() const {
  return static_cast<std::size_t>(
      std::count(point_errors.begin(), point_errors.end(), std::string()));
}

const CheckSeries& ResidualReport::check(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.spec.name == name) return c;
  }
  throw Error(ErrorCode::config, "no check named " + std::string(name));
}

namespace {

std::vector<std::optional<double>> check_values(const PointEvaluation& pe,
                                                bool with_stencil) {
  const PointFrame& pf = pe.frame;
  const bool csl_point = std::abs(pe.div_JH) <= kCslPointTol;
  std::vector<std::optional<double>> v;
  v.reserve(check_catalog().size());
  for (const auto& c : check_catalog()) {
    std::optional<double> x;
    const std::string& n = c.name;
    if (n == "legendrian_defect") x = pf.legendrian_defect;
    else if (n == "csl") x = std::abs(pe.div_JH);
    else if (n == "csl_fd_route") x = std::abs(pe.div_JH_fd - pe.div_JH);
    else if (n == "nabla_fd_route") x = pe.nabla_route_diff;
    else if (n == "mean_curvature_norm") x = pe.H_norm;
    else if (n == "willmore_legendrian") x = pe.willmore_legendrian;
    else if (n == "csl_willmore") x = std::abs(pe.csl_willmore.expanded);
    else if (n == "csl_willmore_forms")
      x = std::abs(pe.csl_willmore.expanded - 2.0 * pe.csl_willmore.direct);
    else if (n == "obstruction_trace") x = std::abs(pe.obstruction);
    else if (n == "sigma_symmetry") x = pf.sigma_symmetry;
    else if (n == "reeb_orthogonality") x = pf.reeb_orthogonality;
    else if (n == "normal_frame") x = pf.normal_defect;
    else if (n == "claim") x = pf.curvature.claim_residual;
    else if (n == "gauss_brioschi")
      x = std::abs(pf.curvature.kappa_gauss_eq - pf.curvature.kappa_intrinsic);
    else if (n == "ricci_identity") x = pe.ricci;
    else if (n == "normal_laplacian_identity") x = pe.normal_laplacian;
    else if (n == "div_jb_identity") x = pe.div_jb;
    else if (n == "bochner") { if (csl_point) x = pe.bochner; }
    else if (n == "log_laplacian") { if (csl_point) x = pe.log_laplacian; }
    else if (n == "codazzi") x = pe.codazzi;
    else if (n == "closedness") x = pe.closedness;
    else if (n == "sasakian") x = pe.sasakian;
    else if (n == "willmore_operator_forms") x = pe.willmore_forms_diff;
    else if (n == "willmore_reeb") x = pe.willmore_reeb;
    if (c.needs_stencil && !with_stencil) x.reset();
    v.push_back(x);
  }
  return v;
}

}  // namespace

ResidualReport identity_suite(const ImmersionSpec& spec,
                              const std::vector<std::array<double, 2>>& points,
                              const SuiteOptions& opts) {
  const auto& cat = check_catalog();
  const std::size_t n = points.size();
  std::vector<std::vector<std::optional<double>>> rows(n);
  std::vector<std::string> errors(n);
  parallel_for(n, opts.workers, [&](std::size_t q) {
    try {
      const PointEvaluation pe = evaluate_point(spec, points[q][0], points[q][1],
                                                opts.eval, opts.with_stencil);
      rows[q] = check_values(pe, opts.with_stencil);
    } catch (const Error& e) {
      errors[q] = e.what();
      rows[q].assign(cat.size(), std::nullopt);
    }
  });

  ResidualReport rep;
  rep.surface = spec.label();
  rep.points = points;
  rep.point_errors = std::move(errors);
  rep.checks.reserve(cat.size());
  for (std::size_t c = 0; c < cat.size(); ++c) {
    CheckSeries series{cat[c], {}};
    series.values.reserve(n);
    for (std::size_t q = 0; q < n; ++q) series.values.push_back(rows[q][c]);
    rep.checks.push_back(std::move(series));
  }
  return rep;
}

std::vector<std::array<double, 2>> grid_points(const ImmersionSpec& spec,
                                               int nx, int ny) {
  if (nx < 4 || ny < 4) {
    throw Error(ErrorCode::grid, "grid needs nx, ny >= 4 (got " +
                                     std::to_string(nx) + "x" +
                                     std::to_string(ny) + ")");
  }
  const ChartDomain& dom = spec.domain();
  auto coord = [](double lo, double width, int n, int k, bool periodic) {
    const double step = width / n;
    return periodic ? lo + k * step : lo + (k + 0.5) * step;
  };
  std::vector<std::array<double, 2>> pts;
  pts.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      pts.push_back({coord(dom.x_min, dom.width(), nx, i, dom.periodic_x),
                     coord(dom.y_min, dom.height(), ny, j, dom.periodic_y)});
    }
  }
  return pts;
}

std::vector<std::array<double, 2>> seeded_points(const ImmersionSpec& spec,
                                                 std::size_t count,
                                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto unit = [&rng] {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  const ChartDomain& dom = spec.domain();
  auto coord = [&](double lo, double width, bool periodic) {
    const double u = unit();
    if (periodic) return lo + u * width;
    const double margin = 0.05 * width;
    return lo + margin + u * (width - 2.0 * margin);
  };
  std::vector<std::array<double, 2>> pts(count);
  for (auto& p : pts) {
    p[0] = coord(dom.x_min, dom.width(), dom.periodic_x);
    p[1] = coord(dom.y_min, dom.height(), dom.periodic_y);
  }
  return pts;
}

void parallel_for(std::size_t n, unsigned workers,
                  const std::function<void(std::size_t)>& fn) {
  const unsigned w = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (w == 1) {
    for (std::size_t q = 0; q < n; ++q) fn(q);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (unsigned t = 0; t < w; ++t) {
    pool.emplace_back([&] {
      for (std::size_t q = next++; q < n && !failed; q = next++) {
        try {
          fn(q);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

EnergyResult willmore_energy(const ImmersionSpec& spec, int nx, int ny,
                             unsigned workers) {
  if (nx < 4 || ny < 4) {
    throw Error(ErrorCode::grid, "energy grid needs nx, ny >= 4");
  }
  const ChartDomain& dom = spec.domain();
  struct Axis {
    std::vector<double> nodes, weights;
  };
  auto axis = [](double lo, double width, int n, bool periodic) {
    Axis ax;
    const double step = periodic ? width / n : width / (n - 1);
    for (int k = 0; k < n; ++k) {
      ax.nodes.push_back(lo + k * step);
      const bool end = !periodic && (k == 0 || k == n - 1);
      ax.weights.push_back(end ? 0.5 * step : step);
    }
    if (!periodic) ax.nodes.back() = lo + width;
    return ax;
  };
  const Axis ax = axis(dom.x_min, dom.width(), nx, dom.periodic_x);
  const Axis ay = axis(dom.y_min, dom.height(), ny, dom.periodic_y);
  const std::size_t total = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  std::vector<std::array<double, 2>> vals(total);
  parallel_for(total, workers, [&](std::size_t q) {
    const std::size_t i = q / static_cast<std::size_t>(ny);
    const std::size_t j = q % static_cast<std::size_t>(ny);
    const SurfaceJets sj =
        surface_jets(evaluate_jet(spec, ax.nodes[i], ay.nodes[j], 2));
    const double sd = std::sqrt(rv(sj.det));
    const CVec3 H = value(sj.H);
    vals[q] = {sd, (0.25 * real_inner(H, H) + 1.0) * sd};
  });
  EnergyResult out;
  for (std::size_t q = 0; q < total; ++q) {
    const double w = ax.weights[q / static_cast<std::size_t>(ny)] *
                     ay.weights[q % static_cast<std::size_t>(ny)];
    out.area += w * vals[q][0];
    out.energy += w * vals[q][1];
  }
  return out;
}

}  // namespace leglab
