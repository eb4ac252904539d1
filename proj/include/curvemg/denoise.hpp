#pragma once

#include <string_view>
#include <vector>

#include "curvemg/image.hpp"
#include "curvemg/parallel.hpp"
#include "curvemg/tangent_planes.hpp"

namespace curvemg {

enum class StopRule { rel_energy, rel_u };

StopRule parse_stop_rule(std::string_view name);  // "energy" or "u"
std::string_view to_string(StopRule rule);

struct SolverConfig {
  double alpha = 0.06;
  CurvatureMode mode = CurvatureMode::mean;
  int layers = 3;
  double epsilon = 1e-6;
  int max_outer = 400;
  int inner_iters = 1;
  StopRule stop_rule = StopRule::rel_energy;
  bool full_vcycle = false;
  Boundary boundary = Boundary::antisymmetric;
  Execution exec = Execution::parallel;
  int threads = 0;  // 0: CURVEMG_THREADS or all processors

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct TraceRecord {
  int iteration = 0;
  double energy = 0.0;
  double rel_energy = 0.0;
  double rel_u = 0.0;
  double seconds = 0.0;       // wall time since the solve started
  double psnr = 0.0;          // NaN when no reference was given
};

struct ConvergenceTrace {
  double initial_energy = 0.0;
  std::vector<TraceRecord> records;
  bool converged = false;

  int iterations() const { return static_cast<int>(records.size()); }
  double final_energy() const { return records.empty() ? initial_energy : records.back().energy; }
};

struct DenoiseResult {
  Image u;
  ConvergenceTrace trace;
};

/// |F_new - F_old| / |F_new|; |F_old| when F_new == 0.
double rel_err_energy(double f_new, double f_old);

/// ||u_new - u_old||_1 / ||u_new||_1. Throws when u_new is zero.
double rel_err_u(const Image& u_new, const Image& u_old);

/// Multi-grid minimization of sum |curv(u)| + alpha/2 ||u - f||^2 from u = f.
/// `reference`, if given, adds PSNR against it to every trace record.
DenoiseResult denoise(const Image& f, const SolverConfig& config, const Image* reference = nullptr);

/// Layer visiting order of one outer iteration: 1..J, then J-1..1 for a full V-cycle.
std::vector<int> layer_schedule(int layers, bool full_vcycle);

}  // namespace curvemg
