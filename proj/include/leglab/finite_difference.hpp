#pragma once

// Central differences used for the "outer" derivative levels: a 4th-order
// five-point stencil at steps h and 2h combined by one Richardson level
// (error O(h^6)). Offsets are -4h, -2h, -h, h, 2h, 4h.

#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace leglab {

inline constexpr double kDefaultStepBase = 1e-3;

inline constexpr std::array<int, 6> kStencilOffsets{-4, -2, -1, 1, 2, 4};
inline constexpr std::array<double, 6> kStencilWeights{
    -1.0 / 360.0, 1.0 / 9.0, -32.0 / 45.0, 32.0 / 45.0, -1.0 / 9.0,
    1.0 / 360.0};

/// h = base * (1 + |coord|).
inline double fd_step(double coord, double base = kDefaultStepBase) {
  return base * (1.0 + std::abs(coord));
}

/// Largest offset the stencil reaches, in units of h.
inline constexpr int kStencilReach = 4;

/// d/dt f at t0 for any T closed under + and scalar multiplication.
template <class T, class F>
T richardson_derivative(F&& f, double t0, double h) {
  T acc = kStencilWeights[0] * f(t0 + kStencilOffsets[0] * h);
  for (std::size_t m = 1; m < kStencilOffsets.size(); ++m) {
    acc = acc + kStencilWeights[m] * f(t0 + kStencilOffsets[m] * h);
  }
  return (1.0 / h) * acc;
}

/// Samples of a multi-component chart field on the 2 x 6 stencil points
/// around a center, differentiated component-wise.
class Stencil2D {
 public:
  using Sampler = std::function<std::vector<double>(double, double)>;

  /// Evaluates `sample` at the 12 stencil points around (x, y).
  Stencil2D(double x, double y, const Sampler& sample,
            double step_base = kDefaultStepBase);

  double hx() const { return hx_; }
  double hy() const { return hy_; }

  /// Component-wise d/dx and d/dy at the center.
  std::vector<double> d_dx() const { return combine(x_samples_, hx_); }
  std::vector<double> d_dy() const { return combine(y_samples_, hy_); }

  /// Point list (x_k, y_k) for a center, x-direction first.
  static std::array<std::array<double, 2>, 12> points(double x, double y,
                                                       double step_base);

 private:
  static std::vector<double> combine(
      const std::array<std::vector<double>, 6>& samples, double h);

  double hx_;
  double hy_;
  std::array<std::vector<double>, 6> x_samples_;
  std::array<std::vector<double>, 6> y_samples_;
};

}  // namespace leglab
