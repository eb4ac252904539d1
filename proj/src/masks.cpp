#include "curvemg/masks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "curvemg/image.hpp"
#include "curvemg/image_io.hpp"

namespace curvemg {

MaskKind parse_mask_kind(std::string_view name) {
  if (name == "cartesian") return MaskKind::cartesian;
  if (name == "radial") return MaskKind::radial;
  throw std::invalid_argument("unknown mask kind: " + std::string(name));
}

std::string_view to_string(MaskKind kind) { return kind == MaskKind::cartesian ? "cartesian" : "radial"; }

std::size_t SamplingMask::count() const {
  return static_cast<std::size_t>(std::count(selected.begin(), selected.end(), std::uint8_t{1}));
}

double SamplingMask::sampling_rate() const {
  return selected.empty() ? 0.0 : static_cast<double>(count()) / static_cast<double>(selected.size());
}

namespace {
void check_request(int height, int width, double rate) {
  if (height < 2 || width < 2) throw std::invalid_argument("mask: image too small");
  if (!(rate > 0.0 && rate <= 1.0)) throw std::invalid_argument("mask: rate must be in (0, 1]");
}
}  // namespace

SamplingMask full_mask(int height, int width) {
  SamplingMask m{MaskKind::cartesian, height, width,
                 std::vector<std::uint8_t>(static_cast<std::size_t>(height) * width, 1)};
  return m;
}

SamplingMask radial_mask(int height, int width, double rate) {
  check_request(height, width, rate);
  SamplingMask m{MaskKind::radial, height, width, std::vector<std::uint8_t>(static_cast<std::size_t>(height) * width, 0)};
  const double golden = std::numbers::pi / std::numbers::phi;  // 111.25 deg
  const double reach = 0.5 * std::hypot(height, width);
  const double cr = height / 2, cc = width / 2;
  for (int k = 0; m.sampling_rate() < rate; ++k) {
    if (k > 100000) throw std::runtime_error("radial mask: rate not reachable");
    const double theta = std::fmod(k * golden, std::numbers::pi);
    const double st = std::sin(theta), ct = std::cos(theta);
    for (double t = -reach; t <= reach; t += 0.5) {
      const int r = static_cast<int>(std::lround(cr + t * st));
      const int c = static_cast<int>(std::lround(cc + t * ct));
      if (r >= 0 && r < height && c >= 0 && c < width) m.selected[static_cast<std::size_t>(r) * width + c] = 1;
    }
  }
  return m;
}

SamplingMask cartesian_mask(int height, int width, double rate, std::uint64_t seed) {
  check_request(height, width, rate);
  SamplingMask m{MaskKind::cartesian, height, width,
                 std::vector<std::uint8_t>(static_cast<std::size_t>(height) * width, 0)};
  auto take_row = [&](int r) { std::fill_n(m.selected.begin() + static_cast<std::ptrdiff_t>(r) * width, width, 1); };
  const int band = std::max(1, static_cast<int>(std::lround(0.08 * height)));
  const int first = height / 2 - band / 2;
  for (int r = first; r < first + band; ++r) take_row(r);
  std::vector<int> rest;
  for (int r = 0; r < height; ++r)
    if (r < first || r >= first + band) rest.push_back(r);
  std::mt19937_64 rng(seed);
  // Fisher-Yates with the generator's raw output, so the order is the same
  // for every standard library.
  for (std::size_t i = rest.size(); i > 1; --i) std::swap(rest[i - 1], rest[rng() % i]);
  for (std::size_t i = 0; i < rest.size() && m.sampling_rate() < rate; ++i) take_row(rest[i]);
  return m;
}

void write_mask_pgm(const SamplingMask& mask, const std::string& path) {
  Image img(mask.width, mask.height, 255.0);
  for (std::size_t i = 0; i < mask.selected.size(); ++i) img.data()[i] = mask.selected[i] ? 255.0 : 0.0;
  write_pgm(img, path);
}

SamplingMask read_mask_pgm(const std::string& path, MaskKind kind) {
  const Image img = read_pgm(path);
  SamplingMask m{kind, img.height(), img.width(), std::vector<std::uint8_t>(img.size(), 0)};
  for (std::size_t i = 0; i < img.size(); ++i) m.selected[i] = img.data()[i] > 0.5 * img.peak() ? 1 : 0;
  return m;
}

}  // namespace curvemg
