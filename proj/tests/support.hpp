#pragma once

#include <array>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "leglab/ambient.hpp"
#include "leglab/expr.hpp"
#include "leglab/surfaces.hpp"

namespace testsupport {

using namespace leglab;

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240611);
  return g;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline CVec3 random_cvec(double scale = 1.0) {
  CVec3 v;
  for (auto& z : v.c) z = Complex(uniform(-scale, scale), uniform(-scale, scale));
  return v;
}

inline CVec3 random_unit() {
  CVec3 v = random_cvec();
  const double n = norm(v);
  for (auto& z : v.c) z /= n;
  return v;
}

inline double dist(const CVec3& a, const CVec3& b) { return norm(a - b); }

/// The five catalog members used throughout.
inline ImmersionSpec calabi_minimal() {
  return calabi(std::sqrt(2.0 / 3.0), 1.0 / std::sqrt(3.0), 1.0 / std::sqrt(2.0),
                1.0 / std::sqrt(2.0));
}

struct Member {
  std::string name;
  ImmersionSpec spec;
  bool minimal;
};

inline std::vector<Member> catalog_members() {
  return {{"calabi", calabi(), false},
          {"mironov", mironov(), false},
          {"geodesic_sphere", geodesic_sphere(), true},
          {"calabi_minimal", calabi_minimal(), true},
          {"mironov_123", mironov(1, 2, 3), true}};
}

inline ImmersionSpec expression_surface(const std::array<std::string, 3>& src,
                                        const ParamTable& params,
                                        const ChartDomain& dom,
                                        const std::string& label = "expression") {
  return from_expression({parse(src[0]), parse(src[1]), parse(src[2])}, params,
                         dom, label);
}

/// Calabi torus written in the expression language.
inline ImmersionSpec calabi_expression(double r1 = 0.8, double r2 = 0.6,
                                       double r3 = 0.6, double r4 = 0.8) {
  const double tau = 2.0 * 3.14159265358979323846;
  return expression_surface(
      {"r1*r3*exp(i*(r2/r1*x + r4/r3*y))", "r1*r4*exp(i*(r2/r1*x - r3/r4*y))",
       "r2*exp(-i*r1/r2*x)"},
      {{"r1", r1}, {"r2", r2}, {"r3", r3}, {"r4", r4}}, {0, tau, 0, tau, true, true},
      "calabi-expr");
}

/// A Legendrian surface that is not csL: a Legendrian "join" over a
/// Legendrian curve of the 3-sphere. Non-periodic chart.
inline ImmersionSpec join_surface() {
  return expression_surface(
      {"cos(x)*cos(y)*exp(i*(y/2 - sin(2*y)/4))",
       "cos(x)*sin(y)*exp(i*(-y/2 - sin(2*y)/4))", "sin(x)"},
      {}, {-1.2, 1.2, -3.0, 3.0, false, false}, "join");
}

}  // namespace testsupport
