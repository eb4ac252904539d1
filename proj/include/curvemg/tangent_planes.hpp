#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "curvemg/image.hpp"

namespace curvemg {

/// A local plane through three surface points around a centre pixel.
///
/// `x` and `y` are opposite stencil points (y == -x), so the plane passes
/// over the centre; `z` is the stencil point perpendicular to the x-y line.
struct TangentPlane {
  Offset x;
  Offset y;
  Offset z;
};

/// Planes enumerated on one multi-grid layer. Layer j uses the (2r+1)-wide
/// stencil with r = 2^(j-1) and holds 2^(j+2) planes: one pair for every
/// line through opposite boundary points of the stencil. The first eight are
/// the layer-1 planes scaled by r.
struct TangentPlaneSet {
  int layer = 1;
  int radius = 1;
  std::vector<TangentPlane> planes;
  std::size_t count() const { return planes.size(); }
};

inline constexpr int kMaxLayer = 6;

/// Cached, immutable. Throws std::out_of_range for layer outside [1, kMaxLayer].
const TangentPlaneSet& plane_set(int layer);

/// Squared grid arc length from the centre to the plane's primary neighbour.
double arc_length_sq(const TangentPlane& plane);

/// Signed distance from the centre surface point to the plane, d = XO . n
/// with n the unit normal of XZ x XY oriented downwards. Positive when the
/// plane lies above the centre, i.e. d is the direction a flattening
/// correction moves the centre. `u` must cover the stencil around (row, col).
double plane_distance(const Image& u, int row, int col, const TangentPlane& plane);

/// Vertical offset that puts the centre exactly on the plane.
double plane_gap(const Image& u, int row, int col, const TangentPlane& plane);

std::vector<double> distances(const Image& u, int row, int col, int layer);

/// Mean of the layer's plane distances without materializing the vector.
double mean_distance(const Image& u, int row, int col, int layer);

/// Arithmetic mean; the least-squares compromise among all plane distances.
double mean_correction(std::span<const double> d);

/// kappa_l = d_l / ds_l^2.
std::vector<double> normal_curvatures(std::span<const double> d, const TangentPlaneSet& set);

struct CurvatureEstimate {
  double kappa_min = 0.0;
  double kappa_max = 0.0;
  double mean_h = 0.0;
  double gauss_k = 0.0;
  std::size_t star_index = 0;  // plane of the principal curvature closer to zero
  std::size_t min_index = 0;
  std::size_t max_index = 0;
};

/// Principal curvatures as extremes of the normal curvatures. Ties go to the
/// lowest plane index; |kappa_min| == |kappa_max| selects the kappa_min plane.
CurvatureEstimate curvature_estimate(const Image& u, int row, int col, int layer);
CurvatureEstimate estimate_from_curvatures(std::span<const double> kappa);

/// Correction that lands the centre on the plane of the smaller principal
/// curvature (vertical gap to that plane).
double gaussian_correction(const Image& u, int row, int col, int layer);

/// Signed distance d* from the centre to that same plane.
double star_distance(const Image& u, int row, int col, int layer);

/// Normal curvatures of one centre pixel as functions of a vertical shift c
/// of that pixel: kappa_l(c) = weight_l * (gap_l - c). Every stencil point
/// other than the centre is held fixed, so each kappa_l is affine in c.
class CurvatureProfile {
 public:
  CurvatureProfile(const Image& u, int row, int col, int layer);

  std::size_t count() const { return gap_.size(); }
  std::span<const double> gaps() const { return gap_; }
  std::span<const double> weights() const { return weight_; }

  double kappa(std::size_t plane, double shift) const { return weight_[plane] * (gap_[plane] - shift); }
  CurvatureEstimate estimate(double shift) const;
  double mean_h(double shift) const { return estimate(shift).mean_h; }
  double gauss_k(double shift) const { return estimate(shift).gauss_k; }

  /// Shifts where two curvature lines cross; |H| and |K| are smooth between them.
  std::vector<double> breakpoints() const;

 private:
  std::vector<double> gap_;
  std::vector<double> weight_;
};

enum class CurvatureMode { mean, gaussian };

CurvatureMode parse_curvature_mode(std::string_view name);
std::string_view to_string(CurvatureMode mode);

/// |H| or |K| at one pixel from the layer-1 planes. `u` must have a one-pixel margin.
double curvature_magnitude(const Image& u, int row, int col, CurvatureMode mode);

/// Sum over pixels of the layer-1 curvature magnitude, using `boundary` to
/// extend u by one pixel.
double curvature_energy(const Image& u, CurvatureMode mode, Boundary boundary);

/// F(u) = sum |H(u)| (or |K(u)|) + alpha/2 sum (u - f)^2.
double energy(const Image& u, const Image& f, double alpha, CurvatureMode mode,
              Boundary boundary = Boundary::antisymmetric);

}  // namespace curvemg
