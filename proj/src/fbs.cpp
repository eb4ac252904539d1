#include "curvemg/fbs.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace curvemg {

double forward_step(const Image& padded, Offset center, int layer, CurvatureMode mode) {
  if (mode == CurvatureMode::mean) return mean_distance(padded, center.row, center.col, layer);
  return star_distance(padded, center.row, center.col, layer);
}

double solve_local(const Image& padded, const LocalProblem& problem, int max_inner) {
  if (max_inner < 1) throw std::invalid_argument("solve_local: max_inner must be at least 1");
  if (!(problem.alpha > 0.0)) throw std::invalid_argument("solve_local: alpha must be positive");
  if (problem.s < 1) throw std::invalid_argument("solve_local: empty patch");
  const double c_half = forward_step(padded, problem.center, problem.layer, problem.mode);
  double c = 0.0;
  for (int t = 0; t < max_inner; ++t)
    c = backward_step(c, c_half, StepSchedule::eta(t), problem.alpha, problem.s, problem.f_star);
  return c;
}

double prox_abs_mean_curvature(const CurvatureProfile& profile, double c_t, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("prox: eta must be positive");
  const auto bp = profile.breakpoints();
  auto objective = [&](double c) {
    const double e = c - c_t;
    return std::abs(profile.mean_h(c)) + e * e / (2.0 * eta);
  };

  std::vector<double> candidates(bp.begin(), bp.end());
  candidates.push_back(c_t);
  // H is affine on each interval between breakpoints. On each piece try the
  // zero of H and the stationary points of the quadratic for both signs.
  const std::size_t pieces = bp.size() + 1;
  for (std::size_t k = 0; k < pieces; ++k) {
    const double lo = k == 0 ? -std::numeric_limits<double>::infinity() : bp[k - 1];
    const double hi = k == bp.size() ? std::numeric_limits<double>::infinity() : bp[k];
    double a, b;
    if (bp.empty()) {
      a = 0.0;
      b = 1.0;
    } else if (k == 0) {
      a = hi - 1.0;
      b = hi;
    } else if (k == bp.size()) {
      a = lo;
      b = lo + 1.0;
    } else {
      a = lo;
      b = hi;
    }
    const double ha = profile.mean_h(0.5 * (a + b) - 0.25 * (b - a));
    const double hb = profile.mean_h(0.5 * (a + b) + 0.25 * (b - a));
    const double slope = (hb - ha) / (0.5 * (b - a));
    const double inside = [&] {
      const double z = 0.5 * (a + b);
      return profile.mean_h(z);
    }();
    auto within = [&](double c) { return c >= lo && c <= hi; };
    if (slope != 0.0) {
      const double zero = 0.5 * (a + b) - inside / slope;
      if (within(zero)) candidates.push_back(zero);
    }
    for (double sign : {-1.0, 1.0}) {
      const double c = c_t - eta * sign * slope;
      if (within(c)) candidates.push_back(c);
    }
  }

  double best = c_t, best_value = objective(c_t);
  for (double c : candidates) {
    const double v = objective(c);
    if (v < best_value) {
      best_value = v;
      best = c;
    }
  }
  return best;
}

}  // namespace curvemg
