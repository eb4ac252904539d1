#include "curvemg/grid.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "curvemg/tangent_planes.hpp"

namespace curvemg {

PatchRect Partition::patch(int index) const {
  const int pr = index / cols, pc = index % cols;
  return {pr * patch_side, pc * patch_side, patch_side, patch_side};
}

PatchRect Partition::clipped(int index) const {
  PatchRect p = patch(index);
  p.rows = std::min(p.rows, height - p.row0);
  p.cols = std::min(p.cols, width - p.col0);
  return p;
}

Offset Partition::center(int index) const {
  const PatchRect p = patch(index);
  return {p.row0 + patch_side / 2, p.col0 + patch_side / 2};
}

Partition make_partition(int height, int width, int layer) {
  if (height < 1 || width < 1) throw std::invalid_argument("partition: empty domain");
  if (layer < 1 || layer > kMaxLayer) throw std::invalid_argument("partition: layer out of range");
  Partition p;
  p.layer = layer;
  p.patch_side = (1 << layer) - 1;
  p.height = height;
  p.width = width;
  p.rows = (height + p.patch_side - 1) / p.patch_side;
  p.cols = (width + p.patch_side - 1) / p.patch_side;
  return p;
}

std::vector<Partition> build_hierarchy(int height, int width, int layers) {
  if (layers < 1) throw std::invalid_argument("build_hierarchy: need at least one layer");
  if (layers > kMaxLayer)
    throw std::invalid_argument("build_hierarchy: at most " + std::to_string(kMaxLayer) + " layers");
  std::vector<Partition> out;
  out.reserve(static_cast<std::size_t>(layers));
  for (int j = 1; j <= layers; ++j) out.push_back(make_partition(height, width, j));
  return out;
}

ColorClasses color(const Partition& partition) {
  ColorClasses cc;
  for (int k = 0; k < 4; ++k) cc.classes[k].reserve(static_cast<std::size_t>(partition.count() / 4 + 1));
  for (int pr = 0; pr < partition.rows; ++pr)
    for (int pc = 0; pc < partition.cols; ++pc)
      cc.classes[patch_color(pr, pc)].push_back(pr * partition.cols + pc);
  return cc;
}

Restriction restrict_fidelity(const Image& f, const Image& u, const PatchRect& patch) {
  if (patch.rows <= 0 || patch.cols <= 0) throw std::invalid_argument("restrict_fidelity: empty patch");
  if (!f.same_shape(u) || patch.row0 < 0 || patch.col0 < 0 || patch.row0 + patch.rows > f.height() ||
      patch.col0 + patch.cols > f.width())
    throw std::invalid_argument("restrict_fidelity: patch outside image");
  double sum = 0.0;
  for (int r = patch.row0; r < patch.row0 + patch.rows; ++r)
    for (int c = patch.col0; c < patch.col0 + patch.cols; ++c) sum += f(r, c) - u(r, c);
  const int s = patch.count();
  return {sum / s, s};
}

Image prolongate(const CorrectionField& c, const Partition& partition, int height, int width, double peak) {
  if (c.rows != partition.rows || c.cols != partition.cols ||
      c.values.size() != static_cast<std::size_t>(partition.count()))
    throw std::invalid_argument("prolongate: correction field does not match partition");
  if (height != partition.height || width != partition.width)
    throw std::invalid_argument("prolongate: target size does not match partition");
  Image out(width, height, peak);
  for (int i = 0; i < partition.count(); ++i) {
    const PatchRect p = partition.clipped(i);
    const double v = c.values[static_cast<std::size_t>(i)];
    for (int r = p.row0; r < p.row0 + p.rows; ++r)
      for (int col = p.col0; col < p.col0 + p.cols; ++col) out(r, col) = v;
  }
  return out;
}

}  // namespace curvemg
