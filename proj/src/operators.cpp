#include "curvemg/operators.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "curvemg/masks.hpp"

namespace curvemg {

std::vector<double> LinearOperator::forward(const Image& img) const {
  if (img.height() != image_height() || img.width() != image_width())
    throw std::invalid_argument("operator: image size does not match");
  std::vector<double> out(measurement_size());
  forward(img.data(), out);
  return out;
}

Image LinearOperator::adjoint(std::span<const double> measurements, double peak) const {
  Image img(image_width(), image_height(), peak);
  adjoint(measurements, img.data());
  return img;
}

void LinearOperator::check_forward(std::size_t image_size, std::size_t out_size) const {
  if (image_size != static_cast<std::size_t>(image_height()) * image_width())
    throw std::invalid_argument("operator: image size does not match");
  if (out_size != measurement_size()) throw std::invalid_argument("operator: measurement size does not match");
}

void LinearOperator::check_adjoint(std::size_t meas_size, std::size_t image_size) const {
  check_forward(image_size, meas_size);
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// ---------------------------------------------------------------------------

IdentityOperator::IdentityOperator(int height, int width) : height_(height), width_(width) {
  if (height < 1 || width < 1) throw std::invalid_argument("identity operator: empty domain");
}

void IdentityOperator::forward(std::span<const double> image, std::span<double> out) const {
  check_forward(image.size(), out.size());
  std::copy(image.begin(), image.end(), out.begin());
}

void IdentityOperator::adjoint(std::span<const double> measurements, std::span<double> image) const {
  check_adjoint(measurements.size(), image.size());
  std::copy(measurements.begin(), measurements.end(), image.begin());
}

// ---------------------------------------------------------------------------

RadonGeometry RadonGeometry::for_image(int height, int width, int n_angles) {
  RadonGeometry g;
  g.n_angles = n_angles;
  g.detector_count = static_cast<int>(std::ceil(std::sqrt(2.0) * std::max(height, width))) + 1;
  g.detector_spacing = 1.0;
  g.pixel_size = 1.0 / std::max(height, width);
  return g;
}

std::vector<double> RadonGeometry::angles() const {
  std::vector<double> a(static_cast<std::size_t>(n_angles));
  for (int k = 0; k < n_angles; ++k) a[static_cast<std::size_t>(k)] = k * std::numbers::pi / n_angles;
  return a;
}

RadonOperator::RadonOperator(int height, int width, RadonGeometry geometry, Execution exec)
    : height_(height), width_(width), geometry_(geometry), exec_(exec) {
  if (height < 1 || width < 1) throw std::invalid_argument("radon: empty domain");
  if (geometry.n_angles < 1 || geometry.detector_count < 1 || !(geometry.detector_spacing > 0.0) ||
      !(geometry.pixel_size > 0.0))
    throw std::invalid_argument("radon: invalid geometry");
  // Pixel (r, c) sits at x = c - (width-1)/2, y = (height-1)/2 - r and projects
  // to t = x cos + y sin. Its linear-interpolation footprint on the detector
  // is a triangle of half-width a = max(|cos|, |sin|) and area 1.
  const double h = geometry.detector_spacing, half = 0.5 * (geometry.detector_count - 1);
  for (double theta : geometry.angles()) {
    const double ct = std::cos(theta), st = std::sin(theta);
    const double a = std::max(std::abs(ct), std::abs(st));
    origin_.push_back((-0.5 * (width - 1) * ct + 0.5 * (height - 1) * st) / h + half);
    step_col_.push_back(ct / h);
    step_row_.push_back(-st / h);
    reach_.push_back(a / h);
    scale_.push_back(geometry.pixel_size / a);
  }
}

namespace {

// Calls f(bin, weight) for every bin with a positive footprint weight.
template <class F>
inline void for_each_bin(double p, double reach, double scale, int count, F&& f) {
  if (reach <= 1.0 && p > -1.0) {
    // Truncation is floor here; std::floor can be an out-of-line call.
    const int b0 = static_cast<int>(p + 1.0) - 1;
    const double base = b0;
    // At most two bins, floor(p) and floor(p) + 1, fall inside the footprint.
    const double frac = p - base;
    const double w0 = 1.0 - frac / reach, w1 = 1.0 - (1.0 - frac) / reach;
    if (w0 > 0.0 && b0 >= 0 && b0 < count) f(b0, w0 * scale);
    if (w1 > 0.0 && b0 + 1 >= 0 && b0 + 1 < count) f(b0 + 1, w1 * scale);
    return;
  }
  const int lo = std::max(0, static_cast<int>(std::floor(p - reach)) + 1);
  const int hi = std::min(count - 1, static_cast<int>(std::floor(p + reach)));
  for (int b = lo; b <= hi; ++b) {
    const double w = 1.0 - std::abs(b - p) / reach;
    if (w > 0.0) f(b, w * scale);
  }
}

}  // namespace

void RadonOperator::forward_angle(std::span<const double> image, int k, std::span<double> row) const {
  const auto kk = static_cast<std::size_t>(k);
  const double reach = reach_[kk], scale = scale_[kk];
  const int count = geometry_.detector_count;
  std::fill(row.begin(), row.end(), 0.0);
  for (int r = 0; r < height_; ++r) {
    const double p0 = origin_[kk] + r * step_row_[kk];
    const double* line = image.data() + static_cast<std::size_t>(r) * width_;
    for (int c = 0; c < width_; ++c) {
      const double v = line[c];
      if (v == 0.0) continue;
      for_each_bin(p0 + c * step_col_[kk], reach, scale, count, [&](int b, double w) { row[b] += v * w; });
    }
  }
}

void RadonOperator::adjoint_row(std::span<const double> sinogram, int r, std::span<double> out) const {
  const int count = geometry_.detector_count;
  std::fill(out.begin(), out.end(), 0.0);
  for (int k = 0; k < geometry_.n_angles; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    const double* bins = sinogram.data() + kk * count;
    const double p0 = origin_[kk] + r * step_row_[kk], dp = step_col_[kk];
    const double reach = reach_[kk], scale = scale_[kk];
    for (int c = 0; c < width_; ++c) {
      double sum = 0.0;
      for_each_bin(p0 + c * dp, reach, scale, count, [&](int b, double w) { sum += bins[b] * w; });
      out[static_cast<std::size_t>(c)] += sum;
    }
  }
}

void RadonOperator::forward(std::span<const double> image, std::span<double> out) const {
  check_forward(image.size(), out.size());
  const auto nd = static_cast<std::size_t>(geometry_.detector_count);
  if (exec_ == Execution::serial) {
    for (int k = 0; k < geometry_.n_angles; ++k) forward_angle(image, k, out.subspan(k * nd, nd));
  } else {
#pragma omp parallel for schedule(static)
    for (int k = 0; k < geometry_.n_angles; ++k) forward_angle(image, k, out.subspan(k * nd, nd));
  }
}

void RadonOperator::adjoint(std::span<const double> measurements, std::span<double> image) const {
  check_adjoint(measurements.size(), image.size());
  const auto w = static_cast<std::size_t>(width_);
  if (exec_ == Execution::serial) {
    for (int r = 0; r < height_; ++r) adjoint_row(measurements, r, image.subspan(r * w, w));
  } else {
#pragma omp parallel for schedule(static)
    for (int r = 0; r < height_; ++r) adjoint_row(measurements, r, image.subspan(r * w, w));
  }
}

// ---------------------------------------------------------------------------

namespace {
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n) : data(fftw_alloc_complex(n)) {
    if (!data) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* data;
};
}  // namespace

struct MaskedFourierOperator::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

MaskedFourierOperator::MaskedFourierOperator(const SamplingMask& mask)
    : height_(mask.height), width_(mask.width), plans_(std::make_unique<Plans>()) {
  if (height_ < 1 || width_ < 1 || mask.selected.size() != static_cast<std::size_t>(height_) * width_)
    throw std::invalid_argument("masked fourier: invalid mask");
  for (int r = 0; r < height_; ++r)
    for (int c = 0; c < width_; ++c)
      if (mask(r, c)) {
        const int kr = (r + height_ - height_ / 2) % height_;
        const int kc = (c + width_ - width_ / 2) % width_;
        selected_.push_back(static_cast<std::size_t>(kr) * width_ + kc);
      }
  const FftwBuffer scratch(static_cast<std::size_t>(height_) * width_);
  const std::lock_guard lock(fftw_planner_mutex());
  plans_->forward = fftw_plan_dft_2d(height_, width_, scratch.data, scratch.data, FFTW_FORWARD, FFTW_ESTIMATE);
  plans_->backward = fftw_plan_dft_2d(height_, width_, scratch.data, scratch.data, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!plans_->forward || !plans_->backward) throw std::runtime_error("masked fourier: FFTW planning failed");
}

MaskedFourierOperator::~MaskedFourierOperator() {
  const std::lock_guard lock(fftw_planner_mutex());
  if (plans_->forward) fftw_destroy_plan(plans_->forward);
  if (plans_->backward) fftw_destroy_plan(plans_->backward);
}

void MaskedFourierOperator::forward(std::span<const double> image, std::span<double> out) const {
  check_forward(image.size(), out.size());
  const std::size_t n = image.size();
  const FftwBuffer buf(n);
  for (std::size_t i = 0; i < n; ++i) {
    buf.data[i][0] = image[i];
    buf.data[i][1] = 0.0;
  }
  fftw_execute_dft(plans_->forward, buf.data, buf.data);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t m = 0; m < selected_.size(); ++m) {
    out[2 * m] = buf.data[selected_[m]][0] * scale;
    out[2 * m + 1] = buf.data[selected_[m]][1] * scale;
  }
}

void MaskedFourierOperator::adjoint(std::span<const double> measurements, std::span<double> image) const {
  check_adjoint(measurements.size(), image.size());
  const std::size_t n = image.size();
  const FftwBuffer buf(n);
  for (std::size_t i = 0; i < n; ++i) buf.data[i][0] = buf.data[i][1] = 0.0;
  for (std::size_t m = 0; m < selected_.size(); ++m) {
    buf.data[selected_[m]][0] = measurements[2 * m];
    buf.data[selected_[m]][1] = measurements[2 * m + 1];
  }
  fftw_execute_dft(plans_->backward, buf.data, buf.data);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) image[i] = buf.data[i][0] * scale;
}

// ---------------------------------------------------------------------------

double estimate_operator_norm_sq(const LinearOperator& op, int iterations, std::uint64_t seed) {
  if (iterations < 1) throw std::invalid_argument("norm estimate: need at least one iteration");
  const std::size_t n = static_cast<std::size_t>(op.image_height()) * op.image_width();
  std::vector<double> x(n), y(op.measurement_size());
  fill_standard_normal(x, seed);
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    const double norm = std::sqrt(dot(x, x));
    if (norm == 0.0) return 0.0;
    for (double& v : x) v /= norm;
    op.forward(x, y);
    lambda = dot(y, y);
    op.adjoint(y, x);
  }
  return lambda;
}

}  // namespace curvemg
