#include <benchmark/benchmark.h>

#include "formexp/chart_file.hpp"
#include "formexp/pbw.hpp"
#include "formexp/random.hpp"

using namespace formexp;

namespace {

ChartPtr wide_chart() {
  static ChartPtr c = Chart::make({{"x1", 0}, {"x2", 0}, {"t1", 1}, {"x3", 0}}, Truncation{6, 2, 6});
  return c;
}

GradedPoly dense(const ChartPtr& chart, std::uint64_t seed, int terms) {
  RandomSource rng(seed);
  GradedPoly p(chart);
  for (int i = 0; i < terms; ++i) p += rng.fiber_poly(chart, 4, 1) + rng.section(chart, 1, 3, 1);
  return p;
}

void BM_MultiplySerial(benchmark::State& state) {
  auto chart = wide_chart();
  GradedPoly a = dense(chart, 1, static_cast<int>(state.range(0))), b = dense(chart, 2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(multiply(a, b));
}

void BM_MultiplyParallel(benchmark::State& state) {
  auto chart = wide_chart();
  GradedPoly a = dense(chart, 1, static_cast<int>(state.range(0))), b = dense(chart, 2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(multiply_parallel(a, b));
}

Connection curved3() {
  static const char* text =
      "[coordinates]\nx1 0\nx2 0\nx3 0\n[christoffel]\n1 1 2 = x2\n2 3 1 = x1*x3\n3 2 1 = x1*x3\n"
      "[truncation]\nQ = 5\n[flags]\ntorsion_free = true\n";
  return parse_chart_file(text).connection;
}

void BM_PbwTableSerial(benchmark::State& state) {
  Connection c = curved3();
  for (auto _ : state) {
    PbwContext ctx(c);
    ctx.prebuild_serial(static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(ctx.cached());
  }
}

void BM_PbwTableParallel(benchmark::State& state) {
  Connection c = curved3();
  for (auto _ : state) {
    PbwContext ctx(c);
    ctx.prebuild_parallel(static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(ctx.cached());
  }
}

}  // namespace

BENCHMARK(BM_MultiplySerial)->Arg(40)->Arg(120)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MultiplyParallel)->Arg(40)->Arg(120)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PbwTableSerial)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PbwTableParallel)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
