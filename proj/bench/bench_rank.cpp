// Fast elimination path against the serial reference on real Koszul differentials.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>

#include "koszul/koszul.hpp"
#include "koszul/rank.hpp"
#include "koszul/scenarios.hpp"

using namespace koszul;

namespace {

const SectionSystem& quartic_surface() {
  static const SectionSystem sys = smooth_fiber(2, 4, 2, 7, PrimeField(PrimeField::kDefaultPrime), -1, 3);
  return sys;
}

SparseMatrix differential(int p, int q) { return koszul_differential(quartic_surface(), p, q); }

void BM_rank(benchmark::State& st) {
  const auto m = differential(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(rank(m));
  st.counters["rows"] = static_cast<double>(m.rows());
  st.counters["cols"] = static_cast<double>(m.cols());
}

void BM_rank_reference(benchmark::State& st) {
  const auto m = differential(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(rank_reference(m));
}

/// Dense kernel on a random full block, with the given OpenMP thread count.
void BM_dense_rank(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  omp_set_num_threads(static_cast<int>(st.range(1)));
  const PrimeField f(PrimeField::kDefaultPrime);
  std::mt19937_64 rng(3);
  std::vector<fe_t> block(n * n);
  for (auto& x : block) x = static_cast<fe_t>(rng() % f.modulus());
  for (auto _ : st) {
    auto a = block;
    benchmark::DoNotOptimize(dense_rank(a, n, n, f));
  }
}

}  // namespace

BENCHMARK(BM_rank)->Args({2, 1})->Args({3, 1})->Args({4, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rank_reference)->Args({2, 1})->Args({3, 1})->Args({4, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_dense_rank)
    ->ArgsProduct({{256, 512}, {1, omp_get_num_procs()}})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
