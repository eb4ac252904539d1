#include "curvemg/reconstruct.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "curvemg/kernels.hpp"
#include "curvemg/metrics.hpp"

namespace curvemg {

namespace {

Image residual_gradient(const Image& u, std::span<const double> b, const LinearOperator& op) {
  if (b.size() != op.measurement_size()) throw std::invalid_argument("reconstruction: measurement size mismatch");
  std::vector<double> r = op.forward(u);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  return op.adjoint(r, u.peak());
}

std::vector<double> sums_over_patches(const Image& img, const Partition& partition, std::span<const int> patches,
                                      Execution exec) {
  std::vector<double> out(patches.size());
  const auto n = static_cast<std::ptrdiff_t>(patches.size());
  auto one = [&](std::ptrdiff_t k) {
    const PatchRect p = partition.clipped(patches[static_cast<std::size_t>(k)]);
    double s = 0.0;
    for (int r = p.row0; r < p.row0 + p.rows; ++r)
      for (int c = p.col0; c < p.col0 + p.cols; ++c) s += img(r, c);
    out[static_cast<std::size_t>(k)] = s;
  };
  if (exec == Execution::serial) {
    for (std::ptrdiff_t k = 0; k < n; ++k) one(k);
  } else {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) one(k);
  }
  return out;
}

}  // namespace

std::vector<double> assemble_color_rhs(const Image& u, std::span<const double> b, const LinearOperator& op,
                                       const Partition& partition, std::span<const int> patches, double alpha,
                                       std::span<const double> d, Execution exec) {
  if (d.size() != patches.size()) throw std::invalid_argument("assemble_color_rhs: one d per patch required");
  const Image g = residual_gradient(u, b, op);
  auto r = sums_over_patches(g, partition, patches, exec);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += 2.0 * alpha * d[i];
  return r;
}

ColorSystem::ColorSystem(const LinearOperator& op, const Partition& partition, std::span<const int> patches,
                         double alpha, std::vector<double> rhs, Execution exec)
    : op_(op), partition_(partition), patches_(patches), alpha_(alpha), rhs_(std::move(rhs)), exec_(exec) {
  if (!(alpha > 0.0)) throw std::invalid_argument("color system: alpha must be positive");
  if (rhs_.size() != patches.size()) throw std::invalid_argument("color system: one rhs entry per patch required");
  if (op.image_height() != partition.height || op.image_width() != partition.width)
    throw std::invalid_argument("color system: operator does not match partition");
}

Image ColorSystem::expand(std::span<const double> c) const {
  Image img(partition_.width, partition_.height, 1.0);
  apply_corrections(img, partition_, patches_, c);
  return img;
}

std::vector<double> ColorSystem::patch_sums(const Image& img) const {
  return sums_over_patches(img, partition_, patches_, exec_);
}

void ColorSystem::apply(std::span<const double> c, std::span<double> out) const {
  if (c.size() != size() || out.size() != size()) throw std::invalid_argument("color system: size mismatch");
  const auto ac = op_.forward(expand(c));
  const auto g = patch_sums(op_.adjoint(ac));
  for (std::size_t i = 0; i < size(); ++i) out[i] = g[i] + 2.0 * alpha_ * c[i];
}

CgResult cg_solve(const ColorSystem& system, int max_iter, double tol) {
  if (max_iter < 0) throw std::invalid_argument("cg_solve: max_iter must be non-negative");
  const std::size_t n = system.size();
  CgResult res;
  res.solution.assign(n, 0.0);
  std::vector<double> r(system.rhs().begin(), system.rhs().end()), p = r, q(n);
  double rr = dot(r, r);
  const double r0 = std::sqrt(rr);
  res.residual_norms.push_back(r0);
  if (!std::isfinite(r0)) throw std::runtime_error("cg_solve: non-finite right-hand side");
  if (r0 == 0.0) return res;
  for (int k = 0; k < max_iter; ++k) {
    system.apply(p, q);
    const double pq = dot(p, q);
    const double step = rr / pq;
    for (std::size_t i = 0; i < n; ++i) {
      res.solution[i] += step * p[i];
      r[i] -= step * q[i];
    }
    const double rr_new = dot(r, r);
    const double norm = std::sqrt(rr_new);
    res.iterations = k + 1;
    res.residual_norms.push_back(norm);
    if (!std::isfinite(norm)) throw std::runtime_error("cg_solve: non-finite residual");
    if (norm <= tol * r0) break;
    const double beta = rr_new / rr;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    rr = rr_new;
  }
  return res;
}

double reconstruction_objective(const Image& u, std::span<const double> b, const LinearOperator& op, double alpha,
                                Boundary boundary) {
  if (b.size() != op.measurement_size()) throw std::invalid_argument("objective: measurement size mismatch");
  const auto au = op.forward(u);
  double misfit = 0.0;
  for (std::size_t i = 0; i < au.size(); ++i) misfit += (au[i] - b[i]) * (au[i] - b[i]);
  return 0.5 * misfit + alpha * curvature_energy(u, CurvatureMode::mean, boundary);
}

Image initial_guess(std::span<const double> b, const LinearOperator& op, const ReconstructionOptions& options) {
  Image u0 = op.adjoint(b, options.peak);
  if (options.init == InitRule::normalized_adjoint) {
    const double norm_sq = estimate_operator_norm_sq(op, options.norm_iterations);
    if (norm_sq > 0.0)
      for (double& v : u0.data()) v /= norm_sq;
  }
  return u0;
}

ReconstructionResult reconstruct(std::span<const double> b, const LinearOperator& op,
                                 const ReconstructionOptions& options, const Image* reference) {
  const SolverConfig& config = options.solver;
  config.validate();
  if (config.mode != CurvatureMode::mean)
    throw std::invalid_argument("reconstruct: only the mean curvature prior is supported");
  if (b.size() != op.measurement_size()) throw std::invalid_argument("reconstruct: measurement size mismatch");
  for (double v : b)
    if (!std::isfinite(v)) throw std::invalid_argument("reconstruct: non-finite measurements");

  const ThreadScope threads(config.threads);
  const auto start = std::chrono::steady_clock::now();
  const auto hierarchy = build_hierarchy(op.image_height(), op.image_width(), config.layers);
  std::vector<ColorClasses> colors;
  for (const auto& p : hierarchy) colors.push_back(color(p));
  const auto order = layer_schedule(config.layers, config.full_vcycle);

  ReconstructionResult out;
  out.u0 = initial_guess(b, op, options);
  out.u = out.u0;
  Image& u = out.u;
  double f_old = reconstruction_objective(u, b, op, config.alpha, config.boundary);
  out.trace.initial_energy = f_old;

  for (int l = 1; l <= config.max_outer; ++l) {
    const Image u_prev = u;
    for (int j : order) {
      const auto& partition = hierarchy[static_cast<std::size_t>(j - 1)];
      for (const auto& patches : colors[static_cast<std::size_t>(j - 1)].classes) {
        if (patches.empty()) continue;
        const auto d = mean_corrections(u, partition, patches, config.boundary, config.exec);
        auto rhs = assemble_color_rhs(u, b, op, partition, patches, config.alpha, d, config.exec);
        const ColorSystem system(op, partition, patches, config.alpha, std::move(rhs), config.exec);
        const auto cg = cg_solve(system, options.cg_max_iter, options.cg_tol);
        apply_corrections(u, partition, patches, cg.solution);
      }
    }
    const double f_new = reconstruction_objective(u, b, op, config.alpha, config.boundary);
    if (!std::isfinite(f_new))
      throw std::runtime_error("reconstruct: objective became non-finite at outer iteration " + std::to_string(l));
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
