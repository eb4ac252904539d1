#include "curvemg/tangent_planes.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>

namespace curvemg {

namespace {

TangentPlaneSet build_plane_set(int layer) {
  const int r = 1 << (layer - 1);
  TangentPlaneSet set;
  set.layer = layer;
  set.radius = r;

  const Offset n{-r, 0}, s{r, 0}, w{0, -r}, e{0, r};
  const Offset nw{-r, -r}, ne{-r, r}, sw{r, -r}, se{r, r};
  set.planes = {
      {w, e, n}, {w, e, s}, {n, s, w}, {n, s, e}, {nw, se, ne}, {nw, se, sw}, {ne, sw, nw}, {ne, sw, se},
  };

  // Remaining lines through opposite boundary points of the stencil, one
  // representative per pair (col > 0, or col == 0 and row > 0), by angle.
  std::vector<Offset> reps;
  for (int a = -r; a <= r; ++a) {
    for (int b = -r; b <= r; ++b) {
      if (std::max(std::abs(a), std::abs(b)) != r) continue;
      if (!(b > 0 || (b == 0 && a > 0))) continue;
      if (a == 0 || b == 0 || std::abs(a) == std::abs(b)) continue;  // axis/diagonal: already present
      reps.push_back({a, b});
    }
  }
  std::sort(reps.begin(), reps.end(), [](const Offset& p, const Offset& q) {
    return std::atan2(static_cast<double>(p.row), static_cast<double>(p.col)) <
           std::atan2(static_cast<double>(q.row), static_cast<double>(q.col));
  });
  for (const Offset& p : reps) {
    const Offset minus{-p.row, -p.col};
    set.planes.push_back({minus, p, Offset{-p.col, p.row}});
    set.planes.push_back({minus, p, Offset{p.col, -p.row}});
  }
  assert(set.planes.size() == (std::size_t{1} << (layer + 2)));
  return set;
}

struct PlaneGeometry {
  double gap;     // vertical offset from the centre to the plane
  double cosine;  // |n_z| / |n|
};

PlaneGeometry plane_geometry(const Image& u, int row, int col, const TangentPlane& p) {
  const double ux = u(row + p.x.row, col + p.x.col);
  const double uy = u(row + p.y.row, col + p.y.col);
  const double uz = u(row + p.z.row, col + p.z.col);
  // XZ x XY in (row, col, value) coordinates.
  const double a0 = p.z.row - p.x.row, a1 = p.z.col - p.x.col, a2 = uz - ux;
  const double b0 = p.y.row - p.x.row, b1 = p.y.col - p.x.col, b2 = uy - ux;
  const double nx = a1 * b2 - a2 * b1;
  const double ny = a2 * b0 - a0 * b2;
  const double nz = a0 * b1 - a1 * b0;
  const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
  // The centre is the midpoint of x and y, so the plane height there is their mean.
  return {0.5 * (ux + uy) - u(row, col), std::abs(nz) / norm};
}

}  // namespace

const TangentPlaneSet& plane_set(int layer) {
  if (layer < 1 || layer > kMaxLayer)
    throw std::out_of_range("plane_set: layer must be in [1, " + std::to_string(kMaxLayer) + "]");
  static const std::array<TangentPlaneSet, kMaxLayer> sets = [] {
    std::array<TangentPlaneSet, kMaxLayer> out;
    for (int j = 1; j <= kMaxLayer; ++j) out[j - 1] = build_plane_set(j);
    return out;
  }();
  return sets[layer - 1];
}

double arc_length_sq(const TangentPlane& plane) {
  return static_cast<double>(plane.y.row * plane.y.row + plane.y.col * plane.y.col);
}

double plane_distance(const Image& u, int row, int col, const TangentPlane& p) {
  const double ox = u(row, col);
  const double ux = u(row + p.x.row, col + p.x.col);
  const double uy = u(row + p.y.row, col + p.y.col);
  const double uz = u(row + p.z.row, col + p.z.col);
  const double a0 = p.z.row - p.x.row, a1 = p.z.col - p.x.col, a2 = uz - ux;
  const double b0 = p.y.row - p.x.row, b1 = p.y.col - p.x.col, b2 = uy - ux;
  double nx = a1 * b2 - a2 * b1;
  double ny = a2 * b0 - a0 * b2;
  double nz = a0 * b1 - a1 * b0;
  assert(nz != 0.0 && "degenerate tangent plane");
  if (nz > 0.0) {
    nx = -nx;
    ny = -ny;
    nz = -nz;
  }
  const double xo0 = -p.x.row, xo1 = -p.x.col, xo2 = ox - ux;
  return (xo0 * nx + xo1 * ny + xo2 * nz) / std::sqrt(nx * nx + ny * ny + nz * nz);
}

double plane_gap(const Image& u, int row, int col, const TangentPlane& plane) {
  return plane_geometry(u, row, col, plane).gap;
}

std::vector<double> distances(const Image& u, int row, int col, int layer) {
  const auto& set = plane_set(layer);
  std::vector<double> d;
  d.reserve(set.count());
  for (const auto& p : set.planes) d.push_back(plane_distance(u, row, col, p));
  return d;
}

double mean_distance(const Image& u, int row, int col, int layer) {
  const auto& set = plane_set(layer);
  double sum = 0.0;
  for (const auto& p : set.planes) sum += plane_distance(u, row, col, p);
  return sum / static_cast<double>(set.count());
}

double mean_correction(std::span<const double> d) {
  if (d.empty()) throw std::invalid_argument("mean_correction: empty distance vector");
  return std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(d.size());
}

std::vector<double> normal_curvatures(std::span<const double> d, const TangentPlaneSet& set) {
  if (d.size() != set.count())
    throw std::invalid_argument("normal_curvatures: distance vector does not match plane set");
  std::vector<double> kappa(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) kappa[i] = d[i] / arc_length_sq(set.planes[i]);
  return kappa;
}

CurvatureEstimate estimate_from_curvatures(std::span<const double> kappa) {
  if (kappa.empty()) throw std::invalid_argument("curvature estimate: no planes");
  CurvatureEstimate est;
  for (std::size_t i = 1; i < kappa.size(); ++i) {
    if (kappa[i] < kappa[est.min_index]) est.min_index = i;
    if (kappa[i] > kappa[est.max_index]) est.max_index = i;
  }
  est.kappa_min = kappa[est.min_index];
  est.kappa_max = kappa[est.max_index];
  est.mean_h = 0.5 * (est.kappa_min + est.kappa_max);
  est.gauss_k = est.kappa_min * est.kappa_max;
  est.star_index = std::abs(est.kappa_max) < std::abs(est.kappa_min) ? est.max_index : est.min_index;
  return est;
}

CurvatureEstimate curvature_estimate(const Image& u, int row, int col, int layer) {
  const auto& set = plane_set(layer);
  const auto d = distances(u, row, col, layer);
  return estimate_from_curvatures(normal_curvatures(d, set));
}

double gaussian_correction(const Image& u, int row, int col, int layer) {
  const auto est = curvature_estimate(u, row, col, layer);
  return plane_gap(u, row, col, plane_set(layer).planes[est.star_index]);
}

double star_distance(const Image& u, int row, int col, int layer) {
  const auto est = curvature_estimate(u, row, col, layer);
  return plane_distance(u, row, col, plane_set(layer).planes[est.star_index]);
}

CurvatureProfile::CurvatureProfile(const Image& u, int row, int col, int layer) {
  const auto& set = plane_set(layer);
  gap_.reserve(set.count());
  weight_.reserve(set.count());
  for (const auto& p : set.planes) {
    const auto g = plane_geometry(u, row, col, p);
    gap_.push_back(g.gap);
    weight_.push_back(g.cosine / arc_length_sq(p));
  }
}

CurvatureEstimate CurvatureProfile::estimate(double shift) const {
  std::vector<double> kappa(count());
  for (std::size_t i = 0; i < count(); ++i) kappa[i] = this->kappa(i, shift);
  return estimate_from_curvatures(kappa);
}

std::vector<double> CurvatureProfile::breakpoints() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < count(); ++i)
    for (std::size_t k = i + 1; k < count(); ++k)
      if (weight_[i] != weight_[k])
        out.push_back((weight_[i] * gap_[i] - weight_[k] * gap_[k]) / (weight_[i] - weight_[k]));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CurvatureMode parse_curvature_mode(std::string_view name) {
  if (name == "mean") return CurvatureMode::mean;
  if (name == "gaussian") return CurvatureMode::gaussian;
  throw std::invalid_argument("unknown curvature mode: " + std::string(name));
}

std::string_view to_string(CurvatureMode mode) {
  return mode == CurvatureMode::mean ? "mean" : "gaussian";
}

double curvature_magnitude(const Image& u, int row, int col, CurvatureMode mode) {
  const auto& set = plane_set(1);
  std::array<double, 8> kappa{};
  for (std::size_t i = 0; i < kappa.size(); ++i)
    kappa[i] = plane_distance(u, row, col, set.planes[i]) / arc_length_sq(set.planes[i]);
  const auto [lo, hi] = std::minmax_element(kappa.begin(), kappa.end());
  return mode == CurvatureMode::mean ? std::abs(0.5 * (*lo + *hi)) : std::abs(*lo * *hi);
}

double curvature_energy(const Image& u, CurvatureMode mode, Boundary boundary) {
  const Image padded = pad(u, 1, 1, 1, 1, boundary);
  const int h = u.height(), w = u.width();
  // Row sums in parallel, combined in row order so the total does not depend
  // on the thread count.
  std::vector<double> rows(static_cast<std::size_t>(h), 0.0);
#pragma omp parallel for schedule(static)
  for (int r = 0; r < h; ++r) {
    double s = 0.0;
    for (int c = 0; c < w; ++c) s += curvature_magnitude(padded, r + 1, c + 1, mode);
    rows[static_cast<std::size_t>(r)] = s;
  }
  return std::accumulate(rows.begin(), rows.end(), 0.0);
}

double energy(const Image& u, const Image& f, double alpha, CurvatureMode mode, Boundary boundary) {
  if (!u.same_shape(f)) throw std::invalid_argument("energy: u and f differ in size");
  if (!(alpha > 0.0)) throw std::invalid_argument("energy: alpha must be positive");
  double fidelity = 0.0;
  const auto du = u.data();
  const auto df = f.data();
  for (std::size_t i = 0; i < du.size(); ++i) {
    const double e = du[i] - df[i];
    fidelity += e * e;
  }
  return curvature_energy(u, mode, boundary) + 0.5 * alpha * fidelity;
}

}  // namespace curvemg
