#include "curvemg/kernels.hpp"

#include <stdexcept>

#include "curvemg/fbs.hpp"

namespace curvemg {

Image layer_snapshot(const Image& u, const Partition& partition, Boundary boundary) {
  const int r = partition.stencil_radius();
  return pad(u, r, r, r + partition.extended_height() - u.height(), r + partition.extended_width() - u.width(),
             boundary);
}

Offset snapshot_center(const Partition& partition, int patch) {
  const Offset c = partition.center(patch);
  const int r = partition.stencil_radius();
  return {c.row + r, c.col + r};
}

namespace {

double patch_correction(const Image& snapshot, const Image& u, const Image& f, const Partition& partition,
                        int patch, const SweepParams& params) {
  const Restriction rs = restrict_fidelity(f, u, partition.clipped(patch));
  LocalProblem problem;
  problem.layer = partition.layer;
  problem.center = snapshot_center(partition, patch);
  problem.f_star = rs.f_star;
  problem.s = rs.s;
  problem.alpha = params.alpha;
  problem.mode = params.mode;
  return solve_local(snapshot, problem, params.inner_iters);
}

void check_inputs(const Image& u, const Image& f, const Partition& partition) {
  if (!u.same_shape(f)) throw std::invalid_argument("color sweep: u and f differ in size");
  if (u.height() != partition.height || u.width() != partition.width)
    throw std::invalid_argument("color sweep: partition does not match image");
}

}  // namespace

std::vector<double> color_corrections_serial(const Image& u, const Image& f, const Partition& partition,
                                             std::span<const int> patches, const SweepParams& params) {
  check_inputs(u, f, partition);
  const Image snapshot = layer_snapshot(u, partition, params.boundary);
  std::vector<double> c(patches.size());
  for (std::size_t k = 0; k < patches.size(); ++k)
    c[k] = patch_correction(snapshot, u, f, partition, patches[k], params);
  return c;
}

std::vector<double> color_corrections_parallel(const Image& u, const Image& f, const Partition& partition,
                                               std::span<const int> patches, const SweepParams& params) {
  check_inputs(u, f, partition);
  const Image snapshot = layer_snapshot(u, partition, params.boundary);
  std::vector<double> c(patches.size());
  const auto n = static_cast<std::ptrdiff_t>(patches.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k)
    c[static_cast<std::size_t>(k)] =
        patch_correction(snapshot, u, f, partition, patches[static_cast<std::size_t>(k)], params);
  return c;
}

void apply_corrections(Image& u, const Partition& partition, std::span<const int> patches,
                       std::span<const double> corrections) {
  if (patches.size() != corrections.size())
    throw std::invalid_argument("apply_corrections: one correction per patch required");
  const auto n = static_cast<std::ptrdiff_t>(patches.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const PatchRect p = partition.clipped(patches[static_cast<std::size_t>(k)]);
    const double v = corrections[static_cast<std::size_t>(k)];
    for (int r = p.row0; r < p.row0 + p.rows; ++r)
      for (int c = p.col0; c < p.col0 + p.cols; ++c) u(r, c) += v;
  }
}

void color_sweep(Image& u, const Image& f, const Partition& partition, std::span<const int> patches,
                 const SweepParams& params, Execution exec) {
  const auto c = exec == Execution::serial ? color_corrections_serial(u, f, partition, patches, params)
                                           : color_corrections_parallel(u, f, partition, patches, params);
  apply_corrections(u, partition, patches, c);
}

std::vector<double> mean_corrections(const Image& u, const Partition& partition, std::span<const int> patches,
                                     Boundary boundary, Execution exec) {
  const Image snapshot = layer_snapshot(u, partition, boundary);
  std::vector<double> d(patches.size());
  const auto n = static_cast<std::ptrdiff_t>(patches.size());
  auto one = [&](std::ptrdiff_t k) {
    const Offset c = snapshot_center(partition, patches[static_cast<std::size_t>(k)]);
    d[static_cast<std::size_t>(k)] = mean_distance(snapshot, c.row, c.col, partition.layer);
  };
  if (exec == Execution::serial) {
    for (std::ptrdiff_t k = 0; k < n; ++k) one(k);
  } else {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) one(k);
  }
  return d;
}

}  // namespace curvemg
