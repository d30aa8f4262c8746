#pragma once

// Pointwise extrinsic and intrinsic calculus of a Legendrian chart map.
//
// Index conventions: chart indices i, j, k in {0, 1} stand for (x, y);
// Gamma[k][i][j] is the Christoffel symbol with upper index k.

#include <array>

#include "leglab/ambient.hpp"
#include "leglab/jet.hpp"
#include "leglab/surfaces.hpp"

namespace leglab {

using Mat2 = std::array<std::array<double, 2>, 2>;
using JMat2 = std::array<std::array<Jet2, 2>, 2>;
template <class T>
using Sym2 = std::array<std::array<T, 2>, 2>;

inline constexpr double kDegenerateMetricDet = 1e-12;

struct Metric {
  Mat2 g{};
  Mat2 g_inv{};
  double det = 0.0;
};

/// g_ij = real_inner(F_i, F_j); ERR_DEGENERATE_METRIC when det <= 1e-12.
Metric first_fundamental(const JVec3& jets);

/// max_i |<F_i, F>| + |<F, F> - 1|.
double legendrian_defect(const JVec3& jets);

struct Frames {
  CVec3 e1, e2, nu1, nu2, R;
};

/// Gram-Schmidt on (F_x, F_y); nu_a = i e_a; R from the Reeb convention.
Frames frames(const JVec3& jets, const Metric& metric,
              ReebSign sign = ReebSign::minus_i);

/// Jet-valued geometric pipeline. Each quantity loses one degree per chart
/// derivative taken, so with degree-4 input the metric is exact to third
/// order, B and H to second order and Div(JH) to first order.
struct SurfaceJets {
  int degree = 0;
  JVec3 F;
  std::array<JVec3, 2> dF;
  Sym2<JVec3> ddF;
  JMat2 g;
  JMat2 g_inv;
  Jet2 det;
  std::array<JMat2, 2> Gamma;  // needs degree >= 2
  Sym2<JVec3> B;               // needs degree >= 2
  JVec3 H;                     // needs degree >= 2
  std::array<Jet2, 2> a;       // chart components of JH, degree >= 2
  Jet2 div_JH;                 // needs degree >= 3
};

/// Builds the pipeline from F jets of degree 1..4. Throws
/// ERR_DEGENERATE_METRIC.
SurfaceJets surface_jets(const JVec3& F);

/// Fast real-coefficient inner product of jet vectors.
Jet2 rdot(const JVec3& u, const JVec3& v);

struct SecondFundamental {
  Sym2<CVec3> B{};                            // chart components
  std::array<std::array<std::array<double, 2>, 2>, 2> sigma{};  // frame
  CVec3 H{};
  std::array<double, 2> mu{};
  Mat2 A_nu1{}, A_nu2{}, A_R{};               // orthonormal frame
  Mat2 A_iFx{}, A_iFy{};                      // chart coordinates
  Mat2 A_nu1_chart{}, A_nu2_chart{};          // chart coordinates
  Sym2<CVec3> B_frame{};                      // B(e_a, e_b)
  double B_norm_sq = 0.0;
  double H_norm_sq = 0.0;
};

/// Needs jets of degree >= 2 (uses the value level of the pipeline).
SecondFundamental second_fundamental(const SurfaceJets& sj, const Frames& fr);

struct GaussCurvature {
  double kappa_intrinsic = 0.0;  // Brioschi formula on the metric
  double kappa_gauss_eq = 0.0;   // 1 + <B11, B22> - |B12|^2
  double claim_residual = 0.0;   // |2 kappa - 2 - |H|^2 + |B|^2|
};

/// Needs jets of degree >= 3 for the intrinsic side.
GaussCurvature gauss_curvature(const SurfaceJets& sj,
                               const SecondFundamental& sf);

struct PointFrame {
  double x = 0.0, y = 0.0;
  CVec3 F{}, Fx{}, Fy{}, Fxx{}, Fxy{}, Fyy{};
  Metric metric;
  std::array<Mat2, 2> Gamma{};
  Frames frame;
  SecondFundamental sf;
  GaussCurvature curvature;
  double unit_norm_defect = 0.0;
  double tangency_defect = 0.0;  // max |real_inner(F_i, F)|
  double legendrian_defect = 0.0;
  double sigma_symmetry = 0.0;     // max over permutations
  double reeb_orthogonality = 0.0; // max(|<H,R>|, max |A^R|)
  double normal_defect = 0.0;      // max |<B_ij, e_k>|, |<B_ij, F>|
};

PointFrame point_report(const ImmersionSpec& spec, double x, double y,
                        ReebSign sign = ReebSign::minus_i);

/// Assembles a PointFrame from a prebuilt pipeline (degree >= 3).
PointFrame make_point_frame(const SurfaceJets& sj, double x, double y,
                            ReebSign sign = ReebSign::minus_i);

/// Values of a jet matrix / vector at the expansion point.
Mat2 value(const JMat2& m);

/// max over the six index permutations of |sigma_ijk - sigma_pi(ijk)|.
double sigma_symmetry_defect(
    const std::array<std::array<std::array<double, 2>, 2>, 2>& sigma);

}  // namespace leglab
