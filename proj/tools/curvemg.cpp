#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curvemg/denoise.hpp"
#include "curvemg/experiments.hpp"
#include "curvemg/image_io.hpp"
#include "curvemg/metrics.hpp"
#include "curvemg/phantom.hpp"
#include "curvemg/reconstruct.hpp"
#include "curvemg/report.hpp"

namespace fs = std::filesystem;
using namespace curvemg;

namespace {

// Values given on the command line. Unset ones leave the manifest alone.
struct Overrides {
  std::string manifest;
  std::optional<std::string> input, phantom, out_dir, mode, stop, mask;
  std::optional<int> size, layers, max_outer, inner_iters, threads, projections, bench_iterations;
  std::optional<double> alpha, epsilon, sigma, rate;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<int>> sizes;
  bool full_vcycle = false, clip = false;
};

void add_options(CLI::App& app, Overrides& o) {
  app.add_option("--manifest", o.manifest, "JSON run manifest; flags override its values");
  app.add_option("--input", o.input, "Observed image (.pgm or .csv) instead of a noisy phantom");
  app.add_option("--phantom", o.phantom, "shepp_logan, triangle or shapes");
  app.add_option("--size", o.size, "Phantom side length in pixels");
  app.add_option("--out-dir", o.out_dir, "Directory for images, trace and report");
  app.add_option("--alpha", o.alpha, "Fidelity weight");
  app.add_option("--mode", o.mode, "Curvature: mean or gaussian");
  app.add_option("--layers", o.layers, "Number of multi-grid layers J");
  app.add_option("--epsilon", o.epsilon, "Relative-change tolerance");
  app.add_option("--max-outer", o.max_outer, "Outer iteration cap");
  app.add_option("--inner-iters", o.inner_iters, "Forward-backward passes per local problem");
  app.add_option("--stop", o.stop, "Stopping quantity: energy or u");
  app.add_option("--seed", o.seed, "Seed for noise and random masks");
  app.add_option("--sigma", o.sigma, "Noise standard deviation on the 0-255 scale");
  app.add_option("--projections", o.projections, "CT projection angles");
  app.add_option("--mask", o.mask, "MRI sampling: cartesian or radial");
  app.add_option("--rate", o.rate, "MRI sampling rate");
  app.add_option("--threads", o.threads, "Solver threads (0: CURVEMG_THREADS or all cores)");
  app.add_option("--sizes", o.sizes, "Bench image sizes")->delimiter(',');
  app.add_option("--bench-iterations", o.bench_iterations, "Bench outer iteration budget");
  app.add_flag("--full-vcycle", o.full_vcycle, "Sweep layers 1..J..1 instead of 1..J");
  app.add_flag("--clip", o.clip, "Clip noisy input to [0, peak]");
}

RunManifest resolve(Command command, const Overrides& o) {
  RunManifest m = o.manifest.empty() ? default_manifest(command) : read_manifest(o.manifest);
  m.command = command;
  SolverConfig& s = m.solver;
  if (o.input) m.input = *o.input;
  if (o.phantom) m.phantom = *o.phantom;
  if (o.size) m.size = *o.size;
  if (o.out_dir) m.out_dir = *o.out_dir;
  if (o.alpha) s.alpha = *o.alpha;
  if (o.mode) s.mode = parse_curvature_mode(*o.mode);
  if (o.layers) s.layers = *o.layers;
  if (o.epsilon) s.epsilon = *o.epsilon;
  if (o.max_outer) s.max_outer = *o.max_outer;
  if (o.inner_iters) s.inner_iters = *o.inner_iters;
  if (o.stop) s.stop_rule = parse_stop_rule(*o.stop);
  if (o.threads) s.threads = *o.threads;
  if (o.full_vcycle) s.full_vcycle = true;
  if (o.seed) m.seed = *o.seed;
  if (o.sigma) m.sigma = *o.sigma;
  if (o.projections) m.projections = *o.projections;
  if (o.mask) m.mask = parse_mask_kind(*o.mask);
  if (o.rate) m.rate = *o.rate;
  if (o.clip) m.clip = true;
  if (o.sizes) m.sizes = *o.sizes;
  if (o.bench_iterations) m.bench_iterations = *o.bench_iterations;
  s.validate();
  return m;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text << '\n';
}

MetricReport summarize(const Image& u, const Image* reference, const ConvergenceTrace& trace) {
  MetricReport r;
  r.psnr = reference ? psnr(u, *reference) : std::numeric_limits<double>::quiet_NaN();
  r.ssim = reference ? ssim(u, *reference) : std::numeric_limits<double>::quiet_NaN();
  r.energy = trace.final_energy();
  r.iterations = trace.iterations();
  r.wall_time = trace.records.empty() ? 0.0 : trace.records.back().seconds;
  return r;
}

MetricReport baseline(const Image& u, const Image* reference) {
  MetricReport r;
  r.psnr = reference ? psnr(u, *reference) : std::numeric_limits<double>::quiet_NaN();
  r.ssim = reference ? ssim(u, *reference) : std::numeric_limits<double>::quiet_NaN();
  r.energy = std::numeric_limits<double>::quiet_NaN();
  return r;
}

int finish(const RunManifest& m, const ConvergenceTrace& trace, const MetricReport& report) {
  const fs::path dir = m.out_dir;
  write_trace_csv(trace, dir / "trace.csv");
  write_metric_report(report, dir / "metrics.json");
  write_text(dir / "manifest.json", manifest_to_json(m));
  std::printf("%s: %d outer iterations, %.3f s, energy %.6g", std::string(to_string(m.command)).c_str(),
              report.iterations, report.wall_time, report.energy);
  if (std::isfinite(report.psnr)) std::printf(", PSNR %.2f dB, SSIM %.4f", report.psnr, report.ssim);
  std::printf("\n");
  if (!trace.converged) {
    std::fprintf(stderr, "not converged within %d outer iterations (last relative change %.3g > %.3g)\n",
                 m.solver.max_outer, trace.records.empty() ? 0.0 : trace.records.back().rel_energy,
                 m.solver.epsilon);
    return 2;
  }
  return 0;
}

int run_denoise(const RunManifest& m) {
  const fs::path dir = m.out_dir;
  fs::create_directories(dir);
  Image clean, noisy;
  if (!m.input.empty()) {
    noisy = read_image(m.input);
  } else {
    auto c = make_denoise_case(parse_phantom_kind(m.phantom), m.size, m.sigma, m.seed, m.clip);
    clean = std::move(c.clean);
    noisy = std::move(c.noisy);
    write_image(clean, dir / "clean.pgm");
  }
  write_image(noisy, dir / "noisy.pgm");
  const Image* ref = clean.empty() ? nullptr : &clean;
  const auto result = denoise(noisy, m.solver, ref);
  write_image(result.u, dir / "denoised.pgm");
  write_csv_image(result.u, dir / "denoised.csv");
  write_metric_report(baseline(noisy, ref), dir / "noisy_metrics.json");
  return finish(m, result.trace, summarize(result.u, ref, result.trace));
}

ReconstructionOptions recon_options(const RunManifest& m, InitRule init) {
  ReconstructionOptions opt;
  opt.solver = m.solver;
  opt.init = init;
  return opt;
}

int run_ct(const RunManifest& m) {
  const fs::path dir = m.out_dir;
  fs::create_directories(dir);
  // Noise is relative to the largest projection value.
  auto noiseless = make_ct_case(m.size, m.projections, 0.0, m.seed);
  double bmax = 0.0;
  for (double v : noiseless.b) bmax = std::max(bmax, std::abs(v));
  auto c = make_ct_case(m.size, m.projections, m.sigma / 255.0 * bmax, m.seed);
  const auto& radon = static_cast<const RadonOperator&>(*c.op);
  write_measurements(c.b, describe(radon.geometry(), m.size, m.size), dir / "sinogram.csv");
  write_image(c.truth, dir / "truth.pgm");
  const auto r = reconstruct(c.b, *c.op, recon_options(m, InitRule::normalized_adjoint), &c.truth);
  write_image(clip(r.u0, 0.0, 1.0), dir / "initial.pgm");
  write_image(clip(r.u, 0.0, 1.0), dir / "reconstruction.pgm");
  write_csv_image(r.u, dir / "reconstruction.csv");
  write_metric_report(baseline(r.u0, &c.truth), dir / "initial_metrics.json");
  return finish(m, r.trace, summarize(r.u, &c.truth, r.trace));
}

int run_mri(const RunManifest& m) {
  const fs::path dir = m.out_dir;
  fs::create_directories(dir);
  auto c = make_mri_case(m.size, m.mask, m.rate, m.sigma / 255.0, m.seed);
  write_mask_pgm(c.mask, (dir / "mask.pgm").string());
  write_measurements(c.b, describe(c.mask), dir / "kspace.csv");
  write_image(c.truth, dir / "truth.pgm");
  const auto r = reconstruct(c.b, *c.op, recon_options(m, InitRule::adjoint), &c.truth);
  write_image(clip(r.u0, 0.0, 1.0), dir / "zero_filled.pgm");
  write_image(clip(r.u, 0.0, 1.0), dir / "reconstruction.pgm");
  write_csv_image(r.u, dir / "reconstruction.csv");
  write_metric_report(baseline(r.u0, &c.truth), dir / "zero_filled_metrics.json");
  std::printf("sampling rate %.4f\n", c.mask.sampling_rate());
  return finish(m, r.trace, summarize(r.u, &c.truth, r.trace));
}

int run_bench(const RunManifest& m) {
  if (m.sizes.size() < 2) throw std::invalid_argument("bench: need at least two sizes");
  const fs::path dir = m.out_dir;
  fs::create_directories(dir);
  const PhantomKind kind = parse_phantom_kind(m.phantom);

  // Fixed iteration budget: the tolerance is never met.
  SolverConfig fixed = m.solver;
  fixed.epsilon = std::numeric_limits<double>::min();
  fixed.max_outer = m.bench_iterations;
  std::ofstream scaling(dir / "bench.csv");
  scaling << "size,iterations,seconds,cpu_ratio\n";
  std::printf("%6s %10s %10s %10s\n", "size", "iters", "seconds", "ratio");
  double previous = 0.0;
  for (int size : m.sizes) {
    const auto c = make_denoise_case(kind, size, m.sigma, m.seed, m.clip);
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = denoise(c.noisy, fixed);
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double ratio = previous > 0.0 ? sec / previous : std::numeric_limits<double>::quiet_NaN();
    scaling << size << ',' << r.trace.iterations() << ',' << sec << ',';
    if (std::isfinite(ratio)) scaling << ratio;
    scaling << '\n';
    std::printf("%6d %10d %10.3f %10.3f\n", size, r.trace.iterations(), sec, ratio);
    previous = sec;
  }

  // Outer iterations to tolerance for J = 1 and the configured J.
  std::ofstream layers(dir / "layers.csv");
  layers << "layers,iterations,converged,seconds,psnr\n";
  const auto c = make_denoise_case(kind, m.sizes.front(), m.sigma, m.seed, m.clip);
  std::vector<int> counts{1};
  if (m.solver.layers != 1) counts.push_back(m.solver.layers);
  for (int j : counts) {
    SolverConfig cfg = m.solver;
    cfg.layers = j;
    const auto r = denoise(c.noisy, cfg, &c.clean);
    const double sec = r.trace.records.empty() ? 0.0 : r.trace.records.back().seconds;
    layers << j << ',' << r.trace.iterations() << ',' << (r.trace.converged ? 1 : 0) << ',' << sec << ','
           << psnr(r.u, c.clean) << '\n';
    std::printf("J=%d: %d outer iterations%s, %.3f s, PSNR %.2f dB\n", j, r.trace.iterations(),
                r.trace.converged ? "" : " (cap reached)", sec, psnr(r.u, c.clean));
  }
  write_text(dir / "manifest.json", manifest_to_json(m));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-grid curvature regularization: denoising, CT and MRI reconstruction"};
  app.require_subcommand(1);
  Overrides o;
  std::vector<std::pair<CLI::App*, Command>> subs;
  for (Command c : {Command::denoise, Command::ct, Command::mri, Command::bench}) {
    const char* help = c == Command::denoise ? "Denoise a phantom or an image"
                       : c == Command::ct    ? "Reconstruct Shepp-Logan from parallel-beam projections"
                       : c == Command::mri   ? "Reconstruct Shepp-Logan from undersampled k-space"
                                             : "Time the solver across image sizes and layer counts";
    auto* sub = app.add_subcommand(std::string(to_string(c)), help);
    add_options(*sub, o);
    subs.emplace_back(sub, c);
  }
  CLI11_PARSE(app, argc, argv);

  try {
    for (auto& [sub, command] : subs) {
      if (!sub->parsed()) continue;
      const RunManifest m = resolve(command, o);
      switch (command) {
        case Command::denoise: return run_denoise(m);
        case Command::ct: return run_ct(m);
        case Command::mri: return run_mri(m);
        case Command::bench: return run_bench(m);
      }
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
