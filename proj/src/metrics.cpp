#include "curvemg/metrics.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace curvemg {

namespace {

void check_pair(const Image& a, const Image& b, const char* what) {
  if (!a.same_shape(b) || a.empty())
    throw std::invalid_argument(std::string(what) + ": image dimensions differ");
  if (a.peak() != b.peak()) throw std::invalid_argument(std::string(what) + ": peaks differ");
}

constexpr int kWindow = 11;
constexpr double kWindowSigma = 1.5;

std::array<double, kWindow> gaussian_taps() {
  std::array<double, kWindow> w{};
  double sum = 0.0;
  for (int i = 0; i < kWindow; ++i) {
    const double x = i - kWindow / 2;
    w[i] = std::exp(-x * x / (2.0 * kWindowSigma * kWindowSigma));
    sum += w[i];
  }
  for (double& v : w) v /= sum;
  return w;
}

// Separable 'valid' filtering: output is (h-10) x (w-10).
std::vector<double> blur_valid(const std::vector<double>& in, int w, int h,
                               const std::array<double, kWindow>& taps) {
  const int ow = w - kWindow + 1, oh = h - kWindow + 1;
  std::vector<double> tmp(static_cast<std::size_t>(h) * ow);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < ow; ++c) {
      double s = 0.0;
      for (int k = 0; k < kWindow; ++k) s += taps[k] * in[static_cast<std::size_t>(r) * w + c + k];
      tmp[static_cast<std::size_t>(r) * ow + c] = s;
    }
  std::vector<double> out(static_cast<std::size_t>(oh) * ow);
  for (int r = 0; r < oh; ++r)
    for (int c = 0; c < ow; ++c) {
      double s = 0.0;
      for (int k = 0; k < kWindow; ++k) s += taps[k] * tmp[static_cast<std::size_t>(r + k) * ow + c];
      out[static_cast<std::size_t>(r) * ow + c] = s;
    }
  return out;
}

}  // namespace

double mse(const Image& a, const Image& b) {
  check_pair(a, b, "mse");
  const auto da = a.data();
  const auto db = b.data();
  double acc = 0.0;
  for (std::size_t i = 0; i < da.size(); ++i) {
    const double e = da[i] - db[i];
    acc += e * e;
  }
  return acc / static_cast<double>(da.size());
}

double psnr(const Image& a, const Image& b) {
  const double err = mse(a, b);
  if (err == 0.0) return kPsnrIdentical;
  return 10.0 * std::log10(a.peak() * a.peak() / err);
}

double ssim(const Image& a, const Image& b) {
  check_pair(a, b, "ssim");
  const int w = a.width(), h = a.height();
  if (w < kWindow || h < kWindow) throw std::invalid_argument("ssim: image smaller than window");

  const double c1 = std::pow(0.01 * a.peak(), 2);
  const double c2 = std::pow(0.03 * a.peak(), 2);
  const auto taps = gaussian_taps();

  const std::size_t n = a.size();
  std::vector<double> x(a.data().begin(), a.data().end());
  std::vector<double> y(b.data().begin(), b.data().end());
  std::vector<double> xx(n), yy(n), xy(n);
  for (std::size_t i = 0; i < n; ++i) {
    xx[i] = x[i] * x[i];
    yy[i] = y[i] * y[i];
    xy[i] = x[i] * y[i];
  }
  const auto mx = blur_valid(x, w, h, taps);
  const auto my = blur_valid(y, w, h, taps);
  const auto sxx = blur_valid(xx, w, h, taps);
  const auto syy = blur_valid(yy, w, h, taps);
  const auto sxy = blur_valid(xy, w, h, taps);

  double total = 0.0;
  for (std::size_t i = 0; i < mx.size(); ++i) {
    const double vx = sxx[i] - mx[i] * mx[i];
    const double vy = syy[i] - my[i] * my[i];
    const double cov = sxy[i] - mx[i] * my[i];
    const double num = (2.0 * mx[i] * my[i] + c1) * (2.0 * cov + c2);
    const double den = (mx[i] * mx[i] + my[i] * my[i] + c1) * (vx + vy + c2);
    total += num / den;
  }
  return total / static_cast<double>(mx.size());
}

}  // namespace curvemg
