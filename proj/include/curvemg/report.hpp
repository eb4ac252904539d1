#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "curvemg/denoise.hpp"
#include "curvemg/masks.hpp"
#include "curvemg/metrics.hpp"
#include "curvemg/operators.hpp"

namespace curvemg {

inline constexpr std::string_view kTraceSchema = "# curvemg-trace v1";

/// Schema line, header `iter,energy,rel_energy,rel_u,seconds,psnr`, one row
/// per outer iteration. Missing PSNR is written as an empty field.
void write_trace_csv(const ConvergenceTrace& trace, const std::filesystem::path& path);
ConvergenceTrace read_trace_csv(const std::filesystem::path& path);

/// Non-finite numbers become null.
std::string metric_report_json(const MetricReport& report);
void write_metric_report(const MetricReport& report, const std::filesystem::path& path);

enum class Command { denoise, ct, mri, bench };
Command parse_command(std::string_view name);
std::string_view to_string(Command command);

/// Everything needed to reproduce one run. Flags on the command line
/// override the values read from a manifest file.
struct RunManifest {
  Command command = Command::denoise;
  std::string input;    // image file; empty selects the phantom
  std::string phantom = "triangle";
  int size = 128;
  std::string out_dir = "out";
  SolverConfig solver;
  double sigma = 10.0;
  std::uint64_t seed = 1;
  int projections = 36;
  MaskKind mask = MaskKind::radial;
  double rate = 0.1265;
  bool clip = false;
  std::vector<int> sizes{128, 256, 512};
  int bench_iterations = 50;

  friend bool operator==(const RunManifest&, const RunManifest&);
};

/// Defaults for one command. ct and mri switch to the Shepp-Logan phantom,
/// the reconstruction tolerance 1e-4 and their own alpha; ct is noiseless.
RunManifest default_manifest(Command command);

std::string manifest_to_json(const RunManifest& manifest);
/// Keys that are absent keep the defaults of the manifest's command;
/// unknown keys are rejected.
RunManifest manifest_from_json(std::string_view text);
RunManifest read_manifest(const std::filesystem::path& path);

/// Measurement vector as CSV (one value per line) with a sidecar
/// "<path>.json" describing the acquisition.
void write_measurements(std::span<const double> values, const std::string& header_json,
                        const std::filesystem::path& path);
std::vector<double> read_measurements(const std::filesystem::path& path);
std::string describe(const RadonGeometry& geometry, int height, int width);
std::string describe(const SamplingMask& mask);

}  // namespace curvemg
