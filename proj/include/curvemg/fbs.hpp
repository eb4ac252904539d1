#pragma once

#include <cmath>
#include <vector>

#include "curvemg/image.hpp"
#include "curvemg/tangent_planes.hpp"

namespace curvemg {

/// Step sizes of the forward-backward iteration: eta_0 = 1 and
/// eta_{t+1} = 1 / sqrt(1 + t). Positive, non-increasing, tends to zero,
/// with a divergent sum.
struct StepSchedule {
  static double eta(int t) { return t <= 0 ? 1.0 : 1.0 / std::sqrt(static_cast<double>(t)); }
};

/// One patch's correction problem
///   min_c |curv(u + c phi)| + alpha s / 2 (c - f_star)^2.
struct LocalProblem {
  int layer = 1;
  Offset center;  // patch centre in the coordinates of the padded image
  double f_star = 0.0;
  int s = 1;
  double alpha = 0.06;
  CurvatureMode mode = CurvatureMode::mean;
};

/// Curvature step: mean of the layer's plane distances (mean mode) or the
/// distance to the plane of the smaller principal curvature (gaussian mode).
double forward_step(const Image& padded, Offset center, int layer, CurvatureMode mode);

/// Fidelity step, the closed-form minimizer of
///   alpha s/2 (c - f_star)^2 + 1/(2 eta) (c - c_t)^2 + 1/(2 eta) (c - c_half)^2.
inline double backward_step(double c_t, double c_half, double eta, double alpha, double s, double f_star) {
  const double w = alpha * eta * s;
  return (c_t + c_half + w * f_star) / (2.0 + w);
}

/// Runs `steps` forward-backward iterations from c_0 = 0. `forward(c_t, eta_t)`
/// returns c_{t+1/2}. Returns c_1 .. c_steps.
template <class Forward>
std::vector<double> fbs_trajectory(Forward&& forward, double alpha, double s, double f_star, int steps) {
  std::vector<double> path;
  path.reserve(static_cast<std::size_t>(steps));
  double c = 0.0;
  for (int t = 0; t < steps; ++t) {
    const double eta = StepSchedule::eta(t);
    c = backward_step(c, forward(c, eta), eta, alpha, s, f_star);
    path.push_back(c);
  }
  return path;
}

/// Forward-backward solve of one local problem. The curvature step is the
/// geometric estimate at the current snapshot and so does not change across
/// inner iterations; with max_inner = 1 this is the single closed-form update.
double solve_local(const Image& padded, const LocalProblem& problem, int max_inner);

/// Exact proximal point of c -> |H(u + c)| for the discrete mean curvature:
///   argmin_c |H(c)| + (c - c_t)^2 / (2 eta).
/// H is piecewise affine in c, so the minimum is found among finitely many
/// candidates.
double prox_abs_mean_curvature(const CurvatureProfile& profile, double c_t, double eta);

}  // namespace curvemg
