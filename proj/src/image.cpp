#include "curvemg/image.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace curvemg {

Image::Image(int width, int height, double peak, double fill)
    : width_(width), height_(height), peak_(peak) {
  if (width < 0 || height < 0) throw std::invalid_argument("Image: negative dimensions");
  if (!(peak > 0.0)) throw std::invalid_argument("Image: peak must be positive");
  data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

Image::Image(int width, int height, std::vector<double> data, double peak)
    : width_(width), height_(height), peak_(peak), data_(std::move(data)) {
  if (width < 0 || height < 0) throw std::invalid_argument("Image: negative dimensions");
  if (!(peak > 0.0)) throw std::invalid_argument("Image: peak must be positive");
  if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
    throw std::invalid_argument("Image: data length does not match width*height");
}

void Image::set_peak(double peak) {
  if (!(peak > 0.0)) throw std::invalid_argument("Image: peak must be positive");
  peak_ = peak;
}

bool Image::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

namespace {

// Index into [0, n) for the half-sample mirror; handles margins wider than n.
int mirror_index(int i, int n) {
  const int period = 2 * n;
  int k = i % period;
  if (k < 0) k += period;
  return k < n ? k : period - 1 - k;
}

// Extends `line` (length n at offset `lo` inside `buf`) into the whole buffer.
void extend_line(std::vector<double>& buf, int lo, int n, Boundary mode) {
  const int total = static_cast<int>(buf.size());
  if (n <= 0) return;
  if (mode == Boundary::symmetric) {
    std::vector<double> line(buf.begin() + lo, buf.begin() + lo + n);
    for (int i = 0; i < total; ++i) buf[i] = line[mirror_index(i - lo, n)];
    return;
  }
  if (n == 1) {
    std::fill(buf.begin(), buf.end(), buf[lo]);
    return;
  }
  // Point reflection about the current edge sample. Each round can extend by
  // one less than the defined width, so wide margins take several rounds.
  int a = lo, b = lo + n;
  while (a > 0 || b < total) {
    const int reach = b - a - 1;
    const int new_a = std::max(0, a - reach);
    const int new_b = std::min(total, b + reach);
    for (int i = a - 1; i >= new_a; --i) buf[i] = 2.0 * buf[a] - buf[2 * a - i];
    for (int i = b; i < new_b; ++i) buf[i] = 2.0 * buf[b - 1] - buf[2 * (b - 1) - i];
    a = new_a;
    b = new_b;
  }
}

}  // namespace

Image pad(const Image& img, int top, int left, int bottom, int right, Boundary mode) {
  if (top < 0 || left < 0 || bottom < 0 || right < 0)
    throw std::invalid_argument("pad: negative margin");
  if (img.empty()) throw std::invalid_argument("pad: empty image");
  const int w = img.width(), h = img.height();
  const int pw = w + left + right, ph = h + top + bottom;
  Image out(pw, ph, img.peak());

  std::vector<double> row(pw);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) row[left + c] = img(r, c);
    extend_line(row, left, w, mode);
    for (int c = 0; c < pw; ++c) out(r + top, c) = row[c];
  }
  std::vector<double> col(ph);
  for (int c = 0; c < pw; ++c) {
    for (int r = 0; r < h; ++r) col[top + r] = out(top + r, c);
    extend_line(col, top, h, mode);
    for (int r = 0; r < ph; ++r) out(r, c) = col[r];
  }
  return out;
}

Image pad_symmetric(const Image& img, int margin) {
  return pad(img, margin, margin, margin, margin, Boundary::symmetric);
}

Image crop(const Image& img, int top, int left, int height, int width) {
  if (top < 0 || left < 0 || height < 0 || width < 0 || top + height > img.height() ||
      left + width > img.width())
    throw std::invalid_argument("crop: window outside image");
  Image out(width, height, img.peak());
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c) out(r, c) = img(top + r, left + c);
  return out;
}

void fill_standard_normal(std::span<double> out, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  // 53-bit uniform in (0, 1]; avoids log(0).
  auto uniform = [&gen] { return (static_cast<double>(gen() >> 11) + 1.0) * 0x1.0p-53; };
  std::size_t i = 0;
  while (i < out.size()) {
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double theta = 2.0 * std::numbers::pi * uniform();
    out[i++] = r * std::cos(theta);
    if (i < out.size()) out[i++] = r * std::sin(theta);
  }
}

Image add_gaussian_noise(const Image& img, const NoiseSpec& spec) {
  if (spec.sigma < 0.0) throw std::invalid_argument("add_gaussian_noise: sigma < 0");
  Image out = img;
  if (spec.sigma == 0.0) return out;
  std::vector<double> g(img.size());
  fill_standard_normal(g, spec.seed);
  auto d = out.data();
  for (std::size_t i = 0; i < d.size(); ++i) d[i] += spec.sigma * g[i];
  return out;
}

Image clip(const Image& img, double lo, double hi) {
  Image out = img;
  for (double& v : out.data()) v = std::clamp(v, lo, hi);
  return out;
}

}  // namespace curvemg
