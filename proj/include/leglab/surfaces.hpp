#pragma once

// Catalog of chart maps (x, y) -> S^5 in C^3 and their jet evaluation.

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include "leglab/expr.hpp"
#include "leglab/jet.hpp"

namespace leglab {

enum class SurfaceKind { calabi, mironov, geodesic_sphere, expression };

std::string_view surface_kind_name(SurfaceKind kind);

struct ChartDomain {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
  bool periodic_x = false;
  bool periodic_y = false;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
};

class ImmersionSpec {
 public:
  SurfaceKind kind() const { return kind_; }
  const ParamTable& params() const { return params_; }
  double param(const std::string& name) const { return params_.at(name); }
  const ChartDomain& domain() const { return domain_; }
  const std::string& label() const { return label_; }
  bool chart_swapped() const { return swapped_; }
  /// The three coordinate expressions of an expression surface, else null.
  const std::array<ExprAst, 3>* expressions() const { return exprs_.get(); }

  /// Same surface in the chart (x, y) -> F(y, x).
  ImmersionSpec with_swapped_chart() const;
  /// Same map on a different chart rectangle.
  ImmersionSpec with_domain(const ChartDomain& domain) const;

 private:
  friend ImmersionSpec calabi(double, double, double, double);
  friend ImmersionSpec mironov(double, double, double);
  friend ImmersionSpec geodesic_sphere();
  friend ImmersionSpec from_expression(std::array<ExprAst, 3>, ParamTable,
                                       ChartDomain, std::string);

  SurfaceKind kind_ = SurfaceKind::geodesic_sphere;
  ParamTable params_;
  ChartDomain domain_;
  std::string label_;
  bool swapped_ = false;
  std::shared_ptr<const std::array<ExprAst, 3>> exprs_;
};

/// Calabi torus; needs r1^2 + r2^2 = r3^2 + r4^2 = 1 (1e-12) and r_i != 0.
ImmersionSpec calabi(double r1 = 0.8, double r2 = 0.6, double r3 = 0.6,
                     double r4 = 0.8);
/// Mironov torus; needs a, b, c > 0.
ImmersionSpec mironov(double a = 1.0, double b = 2.0, double c = 1.0);
/// Totally geodesic real 2-sphere, chart u in [-1.2, 1.2], v in [0, 2pi).
ImmersionSpec geodesic_sphere();
/// User-defined surface; throws ValidationError (ERR_VALIDATION) when any of
/// the expressions has diagnostics.
ImmersionSpec from_expression(std::array<ExprAst, 3> asts, ParamTable params,
                              ChartDomain domain,
                              std::string label = "expression");

/// Catalog lookup by name with parameter overrides applied to the defaults.
ImmersionSpec make_surface(std::string_view name, const ParamTable& overrides);

/// Periodic wrap into the chart; ERR_DOMAIN for non-periodic coordinates
/// outside the chart.
std::pair<double, double> wrap_to_chart(const ImmersionSpec& spec, double x,
                                        double y);

/// Componentwise jets of F after wrapping; ERR_NOT_ON_SPHERE when
/// ||F| - 1| > 1e-10.
JVec3 evaluate_jet(const ImmersionSpec& spec, double x, double y, int degree);

/// Jets of F at a literal chart point: periodic directions are not wrapped
/// (stencils straddling the seam stay continuous); non-periodic directions
/// must lie in the chart.
JVec3 evaluate_jet_local(const ImmersionSpec& spec, double x, double y,
                         int degree);

}  // namespace leglab
