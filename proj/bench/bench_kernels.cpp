// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "eqp/fock.hpp"
#include "eqp/special.hpp"

namespace {

using namespace eqp;

XSeries operand(int hi) { return F_qp_series(QSeries(Rat(1)), 3, 2, hi); }

void BM_xs_mul_serial(benchmark::State& st) {
  ScopedQmax order(static_cast<int>(st.range(1)));
  const XSeries a = operand(static_cast<int>(st.range(0))), b = operand(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(xs_mul_serial(a, b));
}

void BM_xs_mul_parallel(benchmark::State& st) {
  ScopedQmax order(static_cast<int>(st.range(1)));
  const XSeries a = operand(static_cast<int>(st.range(0))), b = operand(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(xs_mul(a, b));
}

void fock_assembly(benchmark::State& st, bool parallel) {
  ScopedQmax order(30);
  const RealizationConfig cfg{static_cast<int>(st.range(0)), 4, 20};
  for (auto _ : st)
    benchmark::DoNotOptimize(check_delta_relation(DeltaRelation::ee, cfg, static_cast<int>(st.range(1)),
                                                  static_cast<int>(st.range(1)), {}, false, parallel));
}

void BM_fock_assembly_serial(benchmark::State& st) { fock_assembly(st, false); }
void BM_fock_assembly_parallel(benchmark::State& st) { fock_assembly(st, true); }

}  // namespace

BENCHMARK(BM_xs_mul_serial)->Args({16, 30})->Args({32, 60})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_xs_mul_parallel)->Args({16, 30})->Args({32, 60})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fock_assembly_serial)->Args({-2, 3})->Args({1, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fock_assembly_parallel)->Args({-2, 3})->Args({1, 4})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
