#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace curvemg {

/// Row/column pair: a pixel position or a displacement between pixels.
struct Offset {
  int row = 0;
  int col = 0;
  friend bool operator==(const Offset&, const Offset&) = default;
};

/// Dense row-major grey-scale image with a declared dynamic range.
///
/// `peak` is the intensity that PSNR/SSIM treat as full scale: 255 for the
/// denoising experiments, 1 for normalized CT/MRI data.
class Image {
 public:
  Image() = default;
  Image(int width, int height, double peak = 255.0, double fill = 0.0);
  Image(int width, int height, std::vector<double> data, double peak);

  int width() const { return width_; }
  int height() const { return height_; }
  double peak() const { return peak_; }
  void set_peak(double peak);
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(int row, int col) { return data_[index(row, col)]; }
  double operator()(int row, int col) const { return data_[index(row, col)]; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  bool same_shape(const Image& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }
  bool all_finite() const;

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(col);
  }

  int width_ = 0;
  int height_ = 0;
  double peak_ = 255.0;
  std::vector<double> data_;
};

/// Boundary extension used when a stencil or patch reaches past the image.
///
/// `symmetric` mirrors about the edge with the edge sample repeated
/// ([1,2,3] -> [1,1,2,3,3]). `antisymmetric` is the point reflection
/// u(-k) = 2 u(0) - u(k), which reproduces affine images exactly.
enum class Boundary { symmetric, antisymmetric };

Image pad(const Image& img, int top, int left, int bottom, int right, Boundary mode);
Image pad_symmetric(const Image& img, int margin);
Image crop(const Image& img, int top, int left, int height, int width);

struct NoiseSpec {
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

/// Additive white Gaussian noise, unclipped. Box-Muller over mt19937_64, so a
/// given (image, NoiseSpec) pair produces the same output on every platform.
Image add_gaussian_noise(const Image& img, const NoiseSpec& spec);

/// Fills `out` with standard normal samples from the same generator.
void fill_standard_normal(std::span<double> out, std::uint64_t seed);

Image clip(const Image& img, double lo, double hi);

}  // namespace curvemg
