#pragma once

#include <filesystem>

#include "curvemg/image.hpp"

namespace curvemg {

/// Binary PGM (P5), maxval up to 65535. The image peak becomes maxval.
Image read_pgm(const std::filesystem::path& path);

/// Writes P5 with the given maxval (255 or 65535). Values are rescaled from
/// [0, peak] to [0, maxval], rounded and clamped.
void write_pgm(const Image& img, const std::filesystem::path& path, int maxval = 255);

/// Comma-separated grid of doubles, one image row per line, full precision.
/// The peak lives in a sidecar "<path>.json" ({"width", "height", "peak"}).
Image read_csv_image(const std::filesystem::path& path);
void write_csv_image(const Image& img, const std::filesystem::path& path);

/// Dispatches on extension: ".pgm" or ".csv".
Image read_image(const std::filesystem::path& path);
void write_image(const Image& img, const std::filesystem::path& path);

}  // namespace curvemg
