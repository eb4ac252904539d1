#pragma once

#include <limits>

#include "curvemg/image.hpp"

namespace curvemg {

/// Returned by psnr() when the two images are identical.
inline constexpr double kPsnrIdentical = std::numeric_limits<double>::infinity();

double mse(const Image& a, const Image& b);

/// 10 log10(peak^2 / MSE) with peak taken from the images, not their content.
double psnr(const Image& a, const Image& b);

/// Mean SSIM over all valid 11x11 Gaussian (sigma 1.5) windows,
/// K1 = 0.01, K2 = 0.03, L = peak.
double ssim(const Image& a, const Image& b);

struct MetricReport {
  double psnr = 0.0;
  double ssim = 0.0;
  double energy = 0.0;
  int iterations = 0;
  double wall_time = 0.0;
};

}  // namespace curvemg
