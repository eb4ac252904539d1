#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "curvemg/image.hpp"
#include "curvemg/parallel.hpp"

namespace curvemg {

/// Real-linear map from height x width images to a real measurement vector.
/// Complex measurements are stored as interleaved (re, im) pairs, so the
/// Euclidean inner product of two measurement vectors is Re<a, b>.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;

  virtual int image_height() const = 0;
  virtual int image_width() const = 0;
  virtual std::size_t measurement_size() const = 0;

  virtual void forward(std::span<const double> image, std::span<double> out) const = 0;
  virtual void adjoint(std::span<const double> measurements, std::span<double> image) const = 0;

  std::vector<double> forward(const Image& img) const;
  Image adjoint(std::span<const double> measurements, double peak = 1.0) const;

 protected:
  void check_forward(std::size_t image_size, std::size_t out_size) const;
  void check_adjoint(std::size_t meas_size, std::size_t image_size) const;
};

class IdentityOperator final : public LinearOperator {
 public:
  IdentityOperator(int height, int width);
  int image_height() const override { return height_; }
  int image_width() const override { return width_; }
  std::size_t measurement_size() const override { return static_cast<std::size_t>(height_) * width_; }
  void forward(std::span<const double> image, std::span<double> out) const override;
  void adjoint(std::span<const double> measurements, std::span<double> image) const override;
  using LinearOperator::adjoint;
  using LinearOperator::forward;

 private:
  int height_, width_;
};

/// Parallel-beam geometry. Angles k pi / n_angles; detector bins centred on
/// the rotation axis, which sits at the image centre. Detector spacing is in
/// pixels; `pixel_size` is the physical side of one pixel, so line integrals
/// are lengths in physical units.
struct RadonGeometry {
  int n_angles = 36;
  int detector_count = 0;
  double detector_spacing = 1.0;
  double pixel_size = 1.0;

  /// Enough bins of unit spacing to cover the image diagonal, with the
  /// larger image side spanning one physical unit.
  static RadonGeometry for_image(int height, int width, int n_angles);
  std::vector<double> angles() const;
  double bin_position(int bin) const { return (bin - 0.5 * (detector_count - 1)) * detector_spacing; }
};

/// Joseph-style interpolating ray tracer. Measurement layout is
/// angle-major: sinogram[angle * detector_count + bin].
class RadonOperator final : public LinearOperator {
 public:
  RadonOperator(int height, int width, RadonGeometry geometry, Execution exec = Execution::parallel);

  int image_height() const override { return height_; }
  int image_width() const override { return width_; }
  std::size_t measurement_size() const override {
    return static_cast<std::size_t>(geometry_.n_angles) * geometry_.detector_count;
  }
  const RadonGeometry& geometry() const { return geometry_; }
  void set_execution(Execution exec) { exec_ = exec; }

  void forward(std::span<const double> image, std::span<double> out) const override;
  void adjoint(std::span<const double> measurements, std::span<double> image) const override;
  using LinearOperator::adjoint;
  using LinearOperator::forward;

 private:
  void forward_angle(std::span<const double> image, int angle, std::span<double> row) const;
  void adjoint_row(std::span<const double> sinogram, int r, std::span<double> out) const;

  int height_, width_;
  RadonGeometry geometry_;
  Execution exec_;
  // Per angle: fractional bin index of pixel (0, 0), its change per column
  // and per row, the footprint half-width in bins and the weight scale.
  std::vector<double> origin_, step_col_, step_row_, reach_, scale_;
};

struct SamplingMask;

/// Unitary 2-D DFT followed by selection of the mask's frequencies. The mask
/// is stored centred (zero frequency at (height/2, width/2)). Measurements
/// are (re, im) pairs in row-major order of the selected centred positions.
class MaskedFourierOperator final : public LinearOperator {
 public:
  explicit MaskedFourierOperator(const SamplingMask& mask);
  ~MaskedFourierOperator() override;
  MaskedFourierOperator(const MaskedFourierOperator&) = delete;
  MaskedFourierOperator& operator=(const MaskedFourierOperator&) = delete;

  int image_height() const override { return height_; }
  int image_width() const override { return width_; }
  std::size_t measurement_size() const override { return 2 * selected_.size(); }

  void forward(std::span<const double> image, std::span<double> out) const override;
  void adjoint(std::span<const double> measurements, std::span<double> image) const override;
  using LinearOperator::adjoint;
  using LinearOperator::forward;

 private:
  struct Plans;
  int height_, width_;
  std::vector<std::size_t> selected_;  // unshifted DFT index of each measurement
  std::unique_ptr<Plans> plans_;
};

/// ||A||^2 by power iteration on A^T A from a seeded random start.
double estimate_operator_norm_sq(const LinearOperator& op, int iterations = 20, std::uint64_t seed = 7);

/// Euclidean inner product.
double dot(std::span<const double> a, std::span<const double> b);

}  // namespace curvemg
