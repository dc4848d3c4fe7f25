// Serial reference versus OpenMP sweeps on the two hot loops.

#include <benchmark/benchmark.h>

#include "posthoc/axioms.hpp"
#include "posthoc/generators.hpp"

using namespace posthoc;

namespace {

template <class T>
void nesting_sweep(benchmark::State& state, Execution exec) {
  const auto alphas = level_grid<T>(1, 99, 1, 100);
  const auto ps = level_grid<T>(0, 100, 1, 100);
  const auto rho = CertaintyEquivalent<T>::power_mean(T(2));
  const auto loss = LossFunction<T>::canonical();
  for (auto _ : state) benchmark::DoNotOptimize(nesting_grid(rho, loss, alphas, ps, exec));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(alphas.size() * ps.size()));
  state.counters["workers"] = exec == Execution::Parallel ? parallel_workers() : 1;
}

template <class T>
void replication_sweep(benchmark::State& state, Execution exec) {
  const auto suite = generate_profile_suite<T>(1, static_cast<std::size_t>(state.range(0)));
  const auto rho = CertaintyEquivalent<T>::quantile(num::make<T>(1, 2));
  for (auto _ : state) benchmark::DoNotOptimize(check_replication(rho, suite, 1, exec));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(suite.size()));
  state.counters["workers"] = exec == Execution::Parallel ? parallel_workers() : 1;
}

void nesting_rational(benchmark::State& s, Execution e) { nesting_sweep<Rational>(s, e); }
void nesting_double(benchmark::State& s, Execution e) { nesting_sweep<double>(s, e); }
void replication_rational(benchmark::State& s, Execution e) { replication_sweep<Rational>(s, e); }
void replication_double(benchmark::State& s, Execution e) { replication_sweep<double>(s, e); }

}  // namespace

BENCHMARK_CAPTURE(nesting_rational, serial, Execution::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(nesting_rational, parallel, Execution::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(nesting_double, serial, Execution::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(nesting_double, parallel, Execution::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(replication_rational, serial, Execution::Serial)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(replication_rational, parallel, Execution::Parallel)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(replication_double, serial, Execution::Serial)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(replication_double, parallel, Execution::Parallel)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
