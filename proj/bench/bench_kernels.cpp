// Serial reference against OpenMP kernels on 3D grids.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "bmtk/kernels.hpp"

namespace {

std::vector<double> random_values(std::size_t count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(count);
  for (auto& x : v) x = u(rng);
  return v;
}

std::size_t cube(int n) { return static_cast<std::size_t>(n) * n * n; }

template <bool Omp>
void BM_PrefixSum(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto d = random_values(cube(N), 1);
  for (auto _ : state) {
    auto t = Omp ? bmtk::kernels::omp::prefix_sum(3, N, d) : bmtk::kernels::serial::prefix_sum(3, N, d);
    benchmark::DoNotOptimize(t.sums.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cube(N)));
}

template <bool Omp>
void BM_WindowSums(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto d = random_values(cube(N), 2);
  const auto table = bmtk::kernels::omp::prefix_sum(3, N, d);
  const int stride = N / 32 > 0 ? N / 32 : 1;
  for (auto _ : state) {
    auto w = Omp ? bmtk::kernels::omp::window_sums(table, stride, N / 4)
                 : bmtk::kernels::serial::window_sums(table, stride, N / 4);
    benchmark::DoNotOptimize(w.data());
  }
}

template <bool Omp>
void BM_AddProduct(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto a = random_values(cube(N), 3), b = random_values(cube(N), 4);
  std::vector<double> out(cube(N));
  for (auto _ : state) {
    if (Omp) bmtk::kernels::omp::add_product(out, a, b, 1.0);
    else bmtk::kernels::serial::add_product(out, a, b, 1.0);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetBytesProcessed(state.iterations() * static_cast<long>(3 * cube(N) * sizeof(double)));
}

template <bool Omp>
void BM_EuclideanPower(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto a = random_values(cube(N), 5), b = random_values(cube(N), 6), c = random_values(cube(N), 7);
  const std::span<const double> comps[3] = {a, b, c};
  std::vector<double> out(cube(N));
  for (auto _ : state) {
    if (Omp) bmtk::kernels::omp::euclidean_power(comps, 2.0, out);
    else bmtk::kernels::serial::euclidean_power(comps, 2.0, out);
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(BM_PrefixSum<false>)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(BM_PrefixSum<true>)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(BM_WindowSums<false>)->Arg(64)->Arg(128);
BENCHMARK(BM_WindowSums<true>)->Arg(64)->Arg(128);
BENCHMARK(BM_AddProduct<false>)->Arg(64)->Arg(128);
BENCHMARK(BM_AddProduct<true>)->Arg(64)->Arg(128);
BENCHMARK(BM_EuclideanPower<false>)->Arg(64)->Arg(128);
BENCHMARK(BM_EuclideanPower<true>)->Arg(64)->Arg(128);

BENCHMARK_MAIN();
