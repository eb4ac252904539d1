#pragma once

#include <random>
#include <vector>

#include "curvemg/image.hpp"
#include "curvemg/operators.hpp"

namespace testing {

inline curvemg::Image random_image(int h, int w, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0,
                                   double peak = 255.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  curvemg::Image img(w, h, peak);
  for (double& v : img.data()) v = dist(rng);
  return img;
}

inline curvemg::Image affine_image(int h, int w, double a, double b, double c, double peak = 255.0) {
  curvemg::Image img(w, h, peak);
  for (int r = 0; r < h; ++r)
    for (int k = 0; k < w; ++k) img(r, k) = a * r + b * k + c;
  return img;
}

// Smooth random surface: low-order polynomial with random coefficients.
inline curvemg::Image smooth_patch(int side, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const double a = dist(rng), b = dist(rng), c = dist(rng), d = dist(rng), e = dist(rng), g = dist(rng);
  curvemg::Image img(side, side, 255.0);
  const int m = side / 2;
  for (int r = 0; r < side; ++r)
    for (int k = 0; k < side; ++k) {
      const double x = k - m, y = r - m;
      img(r, k) = a + b * x + c * y + 0.3 * (d * x * x + e * x * y + g * y * y);
    }
  return img;
}

// Explicit matrix, row-major, measurement_size x (h*w).
class DenseOperator final : public curvemg::LinearOperator {
 public:
  DenseOperator(int h, int w, std::size_t m, std::mt19937_64& rng) : h_(h), w_(w), m_(m), a_(m * h * w) {
    std::normal_distribution<double> dist;
    for (double& v : a_) v = dist(rng);
  }
  int image_height() const override { return h_; }
  int image_width() const override { return w_; }
  std::size_t measurement_size() const override { return m_; }
  void forward(std::span<const double> x, std::span<double> y) const override {
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < m_; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += a_[i * n + k] * x[k];
      y[i] = s;
    }
  }
  void adjoint(std::span<const double> y, std::span<double> x) const override {
    const std::size_t n = x.size();
    for (std::size_t k = 0; k < n; ++k) x[k] = 0.0;
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t k = 0; k < n; ++k) x[k] += a_[i * n + k] * y[i];
  }
  double entry(std::size_t i, std::size_t k) const { return a_[i * static_cast<std::size_t>(h_ * w_) + k]; }
  using LinearOperator::adjoint;
  using LinearOperator::forward;

 private:
  int h_, w_;
  std::size_t m_;
  std::vector<double> a_;
};

}  // namespace testing
