#pragma once

#include <array>
#include <vector>

#include "curvemg/image.hpp"

namespace curvemg {

/// Pixel rectangle [row0, row0+rows) x [col0, col0+cols).
struct PatchRect {
  int row0 = 0;
  int col0 = 0;
  int rows = 0;
  int cols = 0;
  int count() const { return rows * cols; }
  friend bool operator==(const PatchRect&, const PatchRect&) = default;
};

/// One multi-grid layer: the (extended) pixel domain cut into square
/// patches of side 2^j - 1, row-major from the top-left.
///
/// The patch grid is ceil(m/side) x ceil(n/side); the last row/column of
/// patches may hang over the image. `patch()` gives the full square in
/// image coordinates, `clipped()` its intersection with the image.
struct Partition {
  int layer = 1;
  int patch_side = 1;
  int height = 0;  // image rows m
  int width = 0;   // image cols n
  int rows = 0;    // m_j
  int cols = 0;    // n_j

  int count() const { return rows * cols; }
  int extended_height() const { return rows * patch_side; }
  int extended_width() const { return cols * patch_side; }
  int stencil_radius() const { return 1 << (layer - 1); }

  PatchRect patch(int index) const;
  PatchRect clipped(int index) const;
  /// Centre pixel of the full square patch (may lie outside the image).
  Offset center(int index) const;
};

/// Layers 1..J. Layer 1 patches are single pixels.
std::vector<Partition> build_hierarchy(int height, int width, int layers);
Partition make_partition(int height, int width, int layer);

/// Colour of patch (pr, pc): 2 (pr mod 2) + (pc mod 2). 4-adjacent patches
/// always differ.
inline int patch_color(int patch_row, int patch_col) { return 2 * (patch_row & 1) + (patch_col & 1); }

struct ColorClasses {
  std::array<std::vector<int>, 4> classes;
};

ColorClasses color(const Partition& partition);

struct Restriction {
  double f_star = 0.0;  // patch mean of f - u
  int s = 0;            // pixel count
};

/// Patch mean of f - u over `patch`, which must lie inside both images.
Restriction restrict_fidelity(const Image& f, const Image& u, const PatchRect& patch);

/// Per-patch constants c_j, laid out rows x cols.
struct CorrectionField {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;
};

/// Piecewise-constant injection L_j c onto the height x width image.
Image prolongate(const CorrectionField& c, const Partition& partition, int height, int width,
                 double peak = 255.0);

}  // namespace curvemg
