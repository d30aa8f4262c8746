#include "leglab/finite_difference.hpp"

namespace leglab {

Stencil2D::Stencil2D(double x, double y, const Sampler& sample,
                     double step_base)
    : hx_(fd_step(x, step_base)), hy_(fd_step(y, step_base)) {
  for (std::size_t m = 0; m < kStencilOffsets.size(); ++m) {
    x_samples_[m] = sample(x + kStencilOffsets[m] * hx_, y);
  }
  for (std::size_t m = 0; m < kStencilOffsets.size(); ++m) {
    y_samples_[m] = sample(x, y + kStencilOffsets[m] * hy_);
  }
}

std::array<std::array<double, 2>, 12> Stencil2D::points(double x, double y,
                                                        double step_base) {
  const double hx = fd_step(x, step_base);
  const double hy = fd_step(y, step_base);
  std::array<std::array<double, 2>, 12> out{};
  for (std::size_t m = 0; m < 6; ++m) {
    out[m] = {x + kStencilOffsets[m] * hx, y};
    out[6 + m] = {x, y + kStencilOffsets[m] * hy};
  }
  return out;
}

std::vector<double> Stencil2D::combine(
    const std::array<std::vector<double>, 6>& samples, double h) {
  std::vector<double> out(samples[0].size(), 0.0);
  for (std::size_t m = 0; m < samples.size(); ++m) {
    for (std::size_t q = 0; q < out.size(); ++q) {
      out[q] += kStencilWeights[m] * samples[m][q];
    }
  }
  for (auto& v : out) v /= h;
  return out;
}

}  // namespace leglab
