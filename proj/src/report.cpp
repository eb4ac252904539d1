#include "curvemg/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace curvemg {

using nlohmann::json;

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << std::setprecision(17);
  return out;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void write_trace_csv(const ConvergenceTrace& trace, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << kTraceSchema << '\n' << "iter,energy,rel_energy,rel_u,seconds,psnr\n";
  for (const auto& r : trace.records) {
    out << r.iteration << ',' << r.energy << ',' << r.rel_energy << ',' << r.rel_u << ',' << r.seconds << ',';
    if (std::isfinite(r.psnr)) out << r.psnr;
    out << '\n';
  }
}

ConvergenceTrace read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kTraceSchema) throw std::runtime_error("trace: missing schema line");
  if (!std::getline(in, line) || line != "iter,energy,rel_energy,rel_u,seconds,psnr")
    throw std::runtime_error("trace: unexpected header");
  ConvergenceTrace trace;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (fields.size() == 5) fields.emplace_back();
    if (fields.size() != 6) throw std::runtime_error("trace: malformed row: " + line);
    TraceRecord r;
    r.iteration = std::stoi(fields[0]);
    r.energy = std::stod(fields[1]);
    r.rel_energy = std::stod(fields[2]);
    r.rel_u = std::stod(fields[3]);
    r.seconds = std::stod(fields[4]);
    r.psnr = fields[5].empty() ? std::numeric_limits<double>::quiet_NaN() : std::stod(fields[5]);
    trace.records.push_back(r);
  }
  return trace;
}

std::string metric_report_json(const MetricReport& report) {
  const json j = {{"psnr", number_or_null(report.psnr)},
                  {"ssim", number_or_null(report.ssim)},
                  {"energy", number_or_null(report.energy)},
                  {"iterations", report.iterations},
                  {"wall_time", number_or_null(report.wall_time)}};
  return j.dump(2);
}

void write_metric_report(const MetricReport& report, const std::filesystem::path& path) {
  open_out(path) << metric_report_json(report) << '\n';
}

Command parse_command(std::string_view name) {
  if (name == "denoise") return Command::denoise;
  if (name == "ct") return Command::ct;
  if (name == "mri") return Command::mri;
  if (name == "bench") return Command::bench;
  throw std::invalid_argument("unknown command: " + std::string(name));
}

std::string_view to_string(Command command) {
  switch (command) {
    case Command::denoise: return "denoise";
    case Command::ct: return "ct";
    case Command::mri: return "mri";
    case Command::bench: return "bench";
  }
  return "denoise";
}

bool operator==(const RunManifest& a, const RunManifest& b) { return manifest_to_json(a) == manifest_to_json(b); }

std::string manifest_to_json(const RunManifest& m) {
  const SolverConfig& s = m.solver;
  const json j = {
      {"command", to_string(m.command)},
      {"input", m.input},
      {"phantom", m.phantom},
      {"size", m.size},
      {"out_dir", m.out_dir},
      {"alpha", s.alpha},
      {"mode", to_string(s.mode)},
      {"layers", s.layers},
      {"epsilon", s.epsilon},
      {"max_outer", s.max_outer},
      {"inner_iters", s.inner_iters},
      {"stop", to_string(s.stop_rule)},
      {"full_vcycle", s.full_vcycle},
      {"threads", s.threads},
      {"sigma", m.sigma},
      {"seed", m.seed},
      {"projections", m.projections},
      {"mask", to_string(m.mask)},
      {"rate", m.rate},
      {"clip", m.clip},
      {"sizes", m.sizes},
      {"bench_iterations", m.bench_iterations},
  };
  return j.dump(2);
}

RunManifest default_manifest(Command command) {
  RunManifest m;
  m.command = command;
  if (command == Command::ct || command == Command::mri) {
    m.phantom = "shepp_logan";
    m.solver.epsilon = 1e-4;
    m.solver.max_outer = 100;
    m.solver.alpha = command == Command::ct ? 1e-3 : 1e-2;
    m.sigma = command == Command::ct ? 0.0 : 10.0;
  }
  return m;
}

RunManifest manifest_from_json(std::string_view text) {
  const json j = json::parse(text);
  if (!j.is_object()) throw std::invalid_argument("manifest: expected a JSON object");
  RunManifest m = default_manifest(j.contains("command") ? parse_command(j["command"].get<std::string>())
                                                          : Command::denoise);
  SolverConfig& s = m.solver;
  for (const auto& [key, v] : j.items()) {
    if (key == "command") m.command = parse_command(v.get<std::string>());
    else if (key == "input") m.input = v.get<std::string>();
    else if (key == "phantom") m.phantom = v.get<std::string>();
    else if (key == "size") m.size = v.get<int>();
    else if (key == "out_dir") m.out_dir = v.get<std::string>();
    else if (key == "alpha") s.alpha = v.get<double>();
    else if (key == "mode") s.mode = parse_curvature_mode(v.get<std::string>());
    else if (key == "layers") s.layers = v.get<int>();
    else if (key == "epsilon") s.epsilon = v.get<double>();
    else if (key == "max_outer") s.max_outer = v.get<int>();
    else if (key == "inner_iters") s.inner_iters = v.get<int>();
    else if (key == "stop") s.stop_rule = parse_stop_rule(v.get<std::string>());
    else if (key == "full_vcycle") s.full_vcycle = v.get<bool>();
    else if (key == "threads") s.threads = v.get<int>();
    else if (key == "sigma") m.sigma = v.get<double>();
    else if (key == "seed") m.seed = v.get<std::uint64_t>();
    else if (key == "projections") m.projections = v.get<int>();
    else if (key == "mask") m.mask = parse_mask_kind(v.get<std::string>());
    else if (key == "rate") m.rate = v.get<double>();
    else if (key == "clip") m.clip = v.get<bool>();
    else if (key == "sizes") m.sizes = v.get<std::vector<int>>();
    else if (key == "bench_iterations") m.bench_iterations = v.get<int>();
    else throw std::invalid_argument("manifest: unknown key '" + key + "'");
  }
  s.validate();
  return m;
}

RunManifest read_manifest(const std::filesystem::path& path) { return manifest_from_json(slurp(path)); }

void write_measurements(std::span<const double> values, const std::string& header_json,
                        const std::filesystem::path& path) {
  {
    auto out = open_out(path);
    for (double v : values) out << v << '\n';
  }
  auto header = open_out(path.string() + ".json");
  header << json::parse(header_json).dump(2) << '\n';
}

std::vector<double> read_measurements(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(std::stod(line));
  return out;
}

std::string describe(const RadonGeometry& g, int height, int width) {
  return json{{"operator", "radon"},
              {"height", height},
              {"width", width},
              {"n_angles", g.n_angles},
              {"detector_count", g.detector_count},
              {"detector_spacing", g.detector_spacing},
              {"layout", "angle-major"}}
      .dump();
}

std::string describe(const SamplingMask& mask) {
  return json{{"operator", "masked_fourier"},
              {"height", mask.height},
              {"width", mask.width},
              {"mask", to_string(mask.kind)},
              {"sampling_rate", mask.sampling_rate()},
              {"layout", "interleaved re/im, centred row-major order of selected frequencies"}}
      .dump();
}

}  // namespace curvemg
