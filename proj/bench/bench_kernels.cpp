#include <benchmark/benchmark.h>

#include "qdiff/builtins.hpp"
#include "qdiff/conformal.hpp"
#include "qdiff/field.hpp"

using namespace qdiff;

namespace {

const SurfaceModel& torus() {
  static const SurfaceModel m = builtins::torus(2, 1);
  return m;
}

Exec mode(const benchmark::State& s) { return s.range(1) ? Exec::Parallel : Exec::Serial; }

GridSpec grid(const benchmark::State& s) {
  const int n = static_cast<int>(s.range(0));
  return GridSpec(torus().charts[0].domain, n, n);
}

void BM_Sweep(benchmark::State& s) {
  const auto g = grid(s);
  for (auto _ : s) benchmark::DoNotOptimize(sweep_geometry(torus().charts[0], g, 0, mode(s)));
  s.SetItemsProcessed(s.iterations() * static_cast<long>(g.size()));
}

void BM_StructureDefects(benchmark::State& s) {
  const auto f = sweep_geometry(torus().charts[0], grid(s), 0, Exec::Parallel);
  for (auto _ : s) benchmark::DoNotOptimize(structure_defects(f, mode(s)));
  s.SetItemsProcessed(s.iterations() * static_cast<long>(f.nodes.size()));
}

void BM_Holomorphy(benchmark::State& s) {
  const auto f = sweep_geometry(torus().charts[0], grid(s), 0, Exec::Parallel);
  const weingarten::FGPair fg(
      weingarten::smooth_extension(weingarten::WeingartenFunction::shifted_sqrt(), 1.0 / 9, 0.05));
  for (auto _ : s) benchmark::DoNotOptimize(conformal::holomorphy_residual(f, fg, mode(s)));
  s.SetItemsProcessed(s.iterations() * static_cast<long>(f.nodes.size()));
}

// second argument: 0 = serial reference, 1 = OpenMP
#define QDIFF_BENCH(fn) BENCHMARK(fn)->ArgsProduct({{64, 128, 256}, {0, 1}})->ArgNames({"n", "parallel"})->Unit(benchmark::kMillisecond)

QDIFF_BENCH(BM_Sweep);
QDIFF_BENCH(BM_StructureDefects);
QDIFF_BENCH(BM_Holomorphy);

}  // namespace

BENCHMARK_MAIN();
