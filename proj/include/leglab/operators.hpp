#pragma once

// Differential operators on chart fields, the Willmore-type operators and
// residuals, the identity suite and the energy quadrature.
//
// Residual norms: vector-valued residuals are measured in the ambient
// Euclidean norm of R^6, tangent vectors through the induced metric,
// scalars by absolute value.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "leglab/finite_difference.hpp"
#include "leglab/geometry.hpp"
#include "leglab/surfaces.hpp"

namespace leglab {

using ScalarField = std::function<double(double, double)>;
/// Chart components (a^1, a^2) of a tangent field at a chart point.
using TangentField = std::function<std::array<double, 2>(double, double)>;

struct EvalOptions {
  double step_base = kDefaultStepBase;
  ReebSign reeb = ReebSign::minus_i;
};

/// Throws ERR_STENCIL_OUT_OF_DOMAIN when the stencil around (x, y) leaves
/// a non-periodic chart direction.
void check_stencil_room(const ImmersionSpec& spec, double x, double y,
                        double step_base = kDefaultStepBase, int levels = 1);

// Finite-difference operators on arbitrary fields. Fields are sampled at
// literal chart points (no periodic wrap) around (x, y).

/// (1/sqrt(det g)) d_i (sqrt(det g) a^i).
double divergence(const ImmersionSpec& spec, const TangentField& field,
                  double x, double y, double step_base = kDefaultStepBase);
/// g^{ij} d_j f.
std::array<double, 2> gradient(const ImmersionSpec& spec, const ScalarField& f,
                               double x, double y,
                               double step_base = kDefaultStepBase);
/// Divergence of the gradient (two nested stencil levels).
double laplace_beltrami(const ImmersionSpec& spec, const ScalarField& f,
                        double x, double y,
                        double step_base = kDefaultStepBase);
/// result[i][j] = nabla_i a^j = d_i a^j + Gamma^j_ik a^k.
Mat2 covariant_derivative(const ImmersionSpec& spec, const TangentField& field,
                          double x, double y,
                          double step_base = kDefaultStepBase);

/// Chart components of JH; ERR_NOT_TANGENT when JH leaves the tangent plane
/// by more than 1e-10.
std::array<double, 2> field_JH(const ImmersionSpec& spec, double x, double y);
/// field_JH as a TangentField (literal chart points).
TangentField jh_field(const ImmersionSpec& spec);

struct NablaJH {
  Mat2 nabla{};          // nabla_i (JH)^j
  double norm_sq = 0.0;  // |nabla(JH)|^2
};
NablaJH nabla_JH_pack(const ImmersionSpec& spec, double x, double y);

/// W = 1/2 {-J grad Div(JH) + B(JH,JH) - 1/2 |H|^2 H - 2 Div(JH) R}.
CVec3 willmore_operator(const ImmersionSpec& spec, double x, double y,
                        const EvalOptions& opts = {});
/// Norm of the braces above.
double residual_willmore_legendrian(const ImmersionSpec& spec, double x,
                                    double y, const EvalOptions& opts = {});

struct CslWillmoreResidual {
  double expanded = 0.0;  // Lap Div + 2 tr<B(.,nabla.JH),H> - |H|^2 Div/2 - 4 Div
  double direct = 0.0;    // Div(J W - 2 JH), equals expanded / 2
};
CslWillmoreResidual residual_csl_willmore(const ImmersionSpec& spec, double x,
                                          double y,
                                          const EvalOptions& opts = {});

/// sum_i <B(e_i, nabla_{e_i} JH), H>.
double obstruction_trace(const ImmersionSpec& spec, double x, double y);

/// Everything computed at one chart point.
struct PointEvaluation {
  PointFrame frame;
  std::array<double, 2> a{};  // JH chart components
  double H_norm = 0.0;
  double div_JH = 0.0;
  double div_JH_fd = 0.0;
  double nabla_route_diff = 0.0;
  Mat2 nabla_JH{};
  double nabla_JH_norm_sq = 0.0;
  CVec3 W{};                   // Willmore operator
  double willmore_legendrian = 0.0;
  double willmore_forms_diff = 0.0;   // braces vs rewritten form
  double willmore_reeb = 0.0;         // |<W,R> + Div(JH)|
  double lap_div_JH = 0.0;
  CslWillmoreResidual csl_willmore;
  double obstruction = 0.0;
  double ricci = 0.0;
  double normal_laplacian = 0.0;
  double div_jb = 0.0;
  double bochner = 0.0;
  std::optional<double> log_laplacian;  // absent where |H| < 1e-3
  double codazzi = 0.0;
  double closedness = 0.0;
  double sasakian = 0.0;
};

/// Full evaluation; the center is wrapped into the chart first and the
/// stencil (when requested) straddles it at literal coordinates.
PointEvaluation evaluate_point(const ImmersionSpec& spec, double x, double y,
                               const EvalOptions& opts = {},
                               bool with_stencil = true);

// ---------------------------------------------------------------- reports

enum class CheckScope {
  always,        // every evaluated point
  csl_points,    // only where |Div(JH)| <= 1e-7
  log_points,    // csL points with |H| >= 1e-3
  informational  // reported, never judged per point
};

struct CheckSpec {
  std::string name;
  std::string formula;
  double tolerance;
  CheckScope scope;
  bool needs_stencil;
};

/// Fixed, ordered list of checks in every report.
const std::vector<CheckSpec>& check_catalog();
std::optional<std::size_t> find_check(std::string_view name);

struct Aggregates {
  double max = 0.0;
  double rms = 0.0;
  std::size_t count = 0;
  std::size_t skipped = 0;
};

struct CheckSeries {
  CheckSpec spec;
  std::vector<std::optional<double>> values;  // nullopt = skipped
  Aggregates aggregates() const;
};

struct ResidualReport {
  std::string surface;
  std::vector<std::array<double, 2>> points;
  std::vector<std::string> point_errors;  // empty string when evaluated
  std::vector<CheckSeries> checks;
  std::size_t evaluated_points() const;
  const CheckSeries& check(std::string_view name) const;
};

struct SuiteOptions {
  EvalOptions eval;
  bool with_stencil = true;
  unsigned workers = 1;
};

/// Runs every catalog check at the given chart points. Points whose
/// evaluation fails (stencil outside the chart, degenerate metric, ...)
/// are reported with the error text and counted as skipped.
ResidualReport identity_suite(const ImmersionSpec& spec,
                              const std::vector<std::array<double, 2>>& points,
                              const SuiteOptions& opts = {});

/// nx x ny points: periodic directions at x_min + k dx, others at cell
/// centers. ERR_GRID when nx or ny < 4.
std::vector<std::array<double, 2>> grid_points(const ImmersionSpec& spec,
                                               int nx, int ny);
/// Deterministic pseudo-random points; non-periodic directions keep a
/// margin of 5% of the chart extent on each side.
std::vector<std::array<double, 2>> seeded_points(const ImmersionSpec& spec,
                                                 std::size_t count,
                                                 std::uint64_t seed);

/// Runs fn(i) for i in [0, n) on up to `workers` threads.
void parallel_for(std::size_t n, unsigned workers,
                  const std::function<void(std::size_t)>& fn);

struct EnergyResult {
  double area = 0.0;
  double energy = 0.0;
};

/// Tensor-product trapezoid rule over the chart rectangle of
/// (|H|^2/4 + 1) sqrt(det g). Periodic directions use nx (ny) equispaced
/// nodes without the duplicate endpoint; others include both endpoints.
/// ERR_GRID when nx or ny < 4.
EnergyResult willmore_energy(const ImmersionSpec& spec, int nx, int ny,
                             unsigned workers = 1);

}  // namespace leglab
