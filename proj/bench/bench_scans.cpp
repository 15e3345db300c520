// Serial reference vs OpenMP kernels. Arg 0 = serial, 1 = parallel.
#include <benchmark/benchmark.h>

#include "gtd/geometry.hpp"
#include "gtd/isothermal.hpp"
#include "gtd/thermo.hpp"

namespace {

gtd::Execution mode(const benchmark::State& s) {
  return s.range(0) ? gtd::Execution::parallel : gtd::Execution::serial;
}

void BM_CurvatureScan(benchmark::State& state) {
  const gtd::Expr phi = gtd::entropy({-2.0, 2.5, 3.0});
  const gtd::Grid grid = gtd::Grid::square({0.5, 5.0, 60, false});
  gtd::ScanOptions opts;
  opts.execution = mode(state);
  for (auto _ : state)
    benchmark::DoNotOptimize(gtd::curvature_scan(phi, gtd::MetricKind::natural, grid, opts));
  state.SetItemsProcessed(state.iterations() * grid.size());
}

void BM_RadiusProfile(benchmark::State& state) {
  const gtd::Grid grid = gtd::default_classification_grid();
  for (auto _ : state)
    benchmark::DoNotOptimize(gtd::radius_profile({-1.0, 1.0, 1.0}, grid, mode(state)));
  state.SetItemsProcessed(state.iterations() * grid.size());
}

void BM_IntegrateCoords(benchmark::State& state) {
  const gtd::Expr phi = gtd::parse("q1^4 + q2^4");
  const gtd::Grid grid = gtd::Grid::square({0.5, 2.0, 40, false});
  gtd::IntegrateOptions opts;
  opts.execution = mode(state);
  for (auto _ : state)
    benchmark::DoNotOptimize(gtd::integrate_coords(phi, gtd::Expr::constant(0.5), grid, opts));
}

}  // namespace

BENCHMARK(BM_CurvatureScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RadiusProfile)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IntegrateCoords)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
