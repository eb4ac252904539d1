#pragma once

#include <span>
#include <vector>

#include "curvemg/grid.hpp"
#include "curvemg/image.hpp"
#include "curvemg/parallel.hpp"
#include "curvemg/tangent_planes.hpp"

namespace curvemg {

struct SweepParams {
  double alpha = 0.06;
  CurvatureMode mode = CurvatureMode::mean;
  int inner_iters = 1;
  Boundary boundary = Boundary::antisymmetric;
};

/// u extended so that every patch centre of `partition`, and its stencil,
/// can be addressed: margin r on the top/left, r plus the patch overhang on
/// the bottom/right.
Image layer_snapshot(const Image& u, const Partition& partition, Boundary boundary);

/// Patch centre in snapshot coordinates.
Offset snapshot_center(const Partition& partition, int patch);

/// Local corrections of the listed patches, all read from one snapshot of u.
/// Serial and parallel variants return identical values.
std::vector<double> color_corrections_serial(const Image& u, const Image& f, const Partition& partition,
                                             std::span<const int> patches, const SweepParams& params);
std::vector<double> color_corrections_parallel(const Image& u, const Image& f, const Partition& partition,
                                               std::span<const int> patches, const SweepParams& params);

/// u += c_i on the in-image part of each listed patch.
void apply_corrections(Image& u, const Partition& partition, std::span<const int> patches,
                       std::span<const double> corrections);

/// One (layer, colour) step: solve every listed patch, then write back.
void color_sweep(Image& u, const Image& f, const Partition& partition, std::span<const int> patches,
                 const SweepParams& params, Execution exec);

/// Mean plane distance at each listed patch centre (the d_i of the
/// reconstruction subproblem).
std::vector<double> mean_corrections(const Image& u, const Partition& partition, std::span<const int> patches,
                                     Boundary boundary, Execution exec);

}  // namespace curvemg
