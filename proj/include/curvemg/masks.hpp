#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace curvemg {

enum class MaskKind { cartesian, radial };

MaskKind parse_mask_kind(std::string_view name);
std::string_view to_string(MaskKind kind);

/// Boolean k-space selection, centred: zero frequency at (height/2, width/2).
struct SamplingMask {
  MaskKind kind = MaskKind::radial;
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> selected;  // row-major, 0 or 1

  bool operator()(int row, int col) const {
    return selected[static_cast<std::size_t>(row) * width + col] != 0;
  }
  std::size_t count() const;
  double sampling_rate() const;
};

SamplingMask full_mask(int height, int width);

/// Golden-angle spokes through the centre, added until the rate reaches `rate`.
SamplingMask radial_mask(int height, int width, double rate);

/// Full rows: a centre band of 8% of the rows plus seeded random rows until
/// the rate reaches `rate`.
SamplingMask cartesian_mask(int height, int width, double rate, std::uint64_t seed);

/// 8-bit PGM, 255 for selected frequencies.
void write_mask_pgm(const SamplingMask& mask, const std::string& path);
SamplingMask read_mask_pgm(const std::string& path, MaskKind kind);

}  // namespace curvemg
