// Serial reference kernels against their OpenMP counterparts.
// Thread count follows CURVEMG_THREADS (or all processors).

#include <benchmark/benchmark.h>

#include <vector>

#include "curvemg/experiments.hpp"
#include "curvemg/grid.hpp"
#include "curvemg/kernels.hpp"
#include "curvemg/operators.hpp"
#include "curvemg/parallel.hpp"
#include "curvemg/tangent_planes.hpp"

using namespace curvemg;

namespace {

const Image& noisy(int size) {
  static std::vector<std::pair<int, Image>> cache;
  for (const auto& [s, img] : cache)
    if (s == size) return img;
  cache.emplace_back(size, make_denoise_case(PhantomKind::shapes, size, 10.0, 1, false).noisy);
  return cache.back().second;
}

template <bool Parallel>
void color_corrections(benchmark::State& state) {
  const Image& f = noisy(static_cast<int>(state.range(0)));
  const Partition part = make_partition(f.height(), f.width(), static_cast<int>(state.range(1)));
  const auto cc = color(part);
  const SweepParams params{.mode = state.range(2) ? CurvatureMode::gaussian : CurvatureMode::mean};
  const ThreadScope scope(resolve_threads(0));
  for (auto _ : state)
    for (const auto& patches : cc.classes) {
      auto c = Parallel ? color_corrections_parallel(f, f, part, patches, params)
                        : color_corrections_serial(f, f, part, patches, params);
      benchmark::DoNotOptimize(c.data());
    }
  state.SetItemsProcessed(state.iterations() * f.size());
}

template <Execution Exec>
void full_sweep(benchmark::State& state) {
  const Image& f = noisy(static_cast<int>(state.range(0)));
  const auto hierarchy = build_hierarchy(f.height(), f.width(), 3);
  const ThreadScope scope(resolve_threads(0));
  for (auto _ : state) {
    Image u = f;
    for (const auto& part : hierarchy)
      for (const auto& patches : color(part).classes) {
        const auto c = Exec == Execution::parallel ? color_corrections_parallel(u, f, part, patches, {})
                                                   : color_corrections_serial(u, f, part, patches, {});
        apply_corrections(u, part, patches, c);
      }
    benchmark::DoNotOptimize(u.data().data());
  }
  state.SetItemsProcessed(state.iterations() * f.size());
}

template <Execution Exec>
void radon_forward(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Image x = make_denoise_case(PhantomKind::shapes, n, 0.0, 1, false).clean;
  const RadonOperator op(n, n, RadonGeometry::for_image(n, n, 36), Exec);
  std::vector<double> out(op.measurement_size());
  const ThreadScope scope(resolve_threads(0));
  for (auto _ : state) {
    op.forward(x.data(), out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <Execution Exec>
void radon_adjoint(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const RadonOperator op(n, n, RadonGeometry::for_image(n, n, 36), Exec);
  const auto b = op.forward(make_denoise_case(PhantomKind::shapes, n, 0.0, 1, false).clean);
  std::vector<double> out(static_cast<std::size_t>(n) * n);
  const ThreadScope scope(resolve_threads(0));
  for (auto _ : state) {
    op.adjoint(b, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void energy_eval(benchmark::State& state) {
  const Image& f = noisy(static_cast<int>(state.range(0)));
  const auto mode = state.range(1) ? CurvatureMode::gaussian : CurvatureMode::mean;
  for (auto _ : state) benchmark::DoNotOptimize(energy(f, f, 0.06, mode));
  state.SetItemsProcessed(state.iterations() * f.size());
}

}  // namespace

// size, layer, gaussian?
BENCHMARK(color_corrections<false>)->ArgsProduct({{128, 512}, {1, 3}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(color_corrections<true>)->ArgsProduct({{128, 512}, {1, 3}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(full_sweep<Execution::serial>)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(full_sweep<Execution::parallel>)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(radon_forward<Execution::serial>)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(radon_forward<Execution::parallel>)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(radon_adjoint<Execution::serial>)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(radon_adjoint<Execution::parallel>)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(energy_eval)->ArgsProduct({{128, 512}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
