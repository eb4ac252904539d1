#include "curvemg/denoise.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "curvemg/grid.hpp"
#include "curvemg/kernels.hpp"
#include "curvemg/metrics.hpp"

namespace curvemg {

StopRule parse_stop_rule(std::string_view name) {
  if (name == "energy") return StopRule::rel_energy;
  if (name == "u") return StopRule::rel_u;
  throw std::invalid_argument("unknown stop rule: " + std::string(name));
}

std::string_view to_string(StopRule rule) { return rule == StopRule::rel_energy ? "energy" : "u"; }

void SolverConfig::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be positive");
  if (layers < 1 || layers > kMaxLayer)
    throw std::invalid_argument("layers must be in [1, " + std::to_string(kMaxLayer) + "]");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (max_outer < 1) throw std::invalid_argument("max_outer must be at least 1");
  if (inner_iters < 1) throw std::invalid_argument("inner_iters must be at least 1");
  if (threads < 0) throw std::invalid_argument("threads must be non-negative");
}

double rel_err_energy(double f_new, double f_old) {
  if (f_new == 0.0) return std::abs(f_old);
  return std::abs(f_new - f_old) / std::abs(f_new);
}

double rel_err_u(const Image& u_new, const Image& u_old) {
  if (!u_new.same_shape(u_old)) throw std::invalid_argument("rel_err_u: images differ in size");
  const auto a = u_new.data();
  const auto b = u_old.data();
  double diff = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += std::abs(a[i] - b[i]);
    norm += std::abs(a[i]);
  }
  if (norm == 0.0) throw std::invalid_argument("rel_err_u: u_new is zero");
  return diff / norm;
}

std::vector<int> layer_schedule(int layers, bool full_vcycle) {
  std::vector<int> order;
  for (int j = 1; j <= layers; ++j) order.push_back(j);
  if (full_vcycle)
    for (int j = layers - 1; j >= 1; --j) order.push_back(j);
  return order;
}

DenoiseResult denoise(const Image& f, const SolverConfig& config, const Image* reference) {
  config.validate();
  if (f.empty()) throw std::invalid_argument("denoise: empty image");
  if (!f.all_finite()) throw std::invalid_argument("denoise: image has non-finite values");
  if (reference && !reference->same_shape(f)) throw std::invalid_argument("denoise: reference size mismatch");

  const ThreadScope threads(config.threads);
  const auto start = std::chrono::steady_clock::now();
  const auto hierarchy = build_hierarchy(f.height(), f.width(), config.layers);
  std::vector<ColorClasses> colors;
  for (const auto& p : hierarchy) colors.push_back(color(p));
  const SweepParams params{config.alpha, config.mode, config.inner_iters, config.boundary};
  const auto order = layer_schedule(config.layers, config.full_vcycle);

  DenoiseResult out{f, {}};
  Image& u = out.u;
  double f_old = energy(u, f, config.alpha, config.mode, config.boundary);
  out.trace.initial_energy = f_old;

  for (int l = 1; l <= config.max_outer; ++l) {
    const Image u_prev = u;
    for (int j : order) {
      const auto& partition = hierarchy[static_cast<std::size_t>(j - 1)];
      for (const auto& patches : colors[static_cast<std::size_t>(j - 1)].classes)
        color_sweep(u, f, partition, patches, params, config.exec);
    }
    const double f_new = energy(u, f, config.alpha, config.mode, config.boundary);
    if (!std::isfinite(f_new))
      throw std::runtime_error("denoise: energy became non-finite at outer iteration " + std::to_string(l));

    TraceRecord rec;
    rec.iteration = l;
    rec.energy = f_new;
    rec.rel_energy = rel_err_energy(f_new, f_old);
    bool zero_u = true;
    for (double v : u.data()) zero_u = zero_u && v == 0.0;
    rec.rel_u = zero_u ? 0.0 : rel_err_u(u, u_prev);
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rec.psnr = reference ? psnr(u, *reference) : std::numeric_limits<double>::quiet_NaN();
    out.trace.records.push_back(rec);
    f_old = f_new;

    const double err = config.stop_rule == StopRule::rel_energy ? rec.rel_energy : rec.rel_u;
    if (err <= config.epsilon) {
      out.trace.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace curvemg
