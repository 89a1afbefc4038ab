// Compares the OpenMP kernels against the serial reference on the sizes
// that dominate a separation run: the zero-lag and lagged covariances
// over long sample axes, plus the forward mixing product.

#include <benchmark/benchmark.h>

#include <random>

#include "unmix/kernels.hpp"
#include "unmix/matrix.hpp"
#include "unmix/reference.hpp"

namespace {

unmix::Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  unmix::Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

void bm_gram_parallel(benchmark::State& state) {
  const auto d = random_matrix(state.range(0), state.range(1), 1);
  for (auto _ : state) {
    auto r = unmix::kernels::gram(d, 1.0 / static_cast<double>(d.cols()));
    benchmark::DoNotOptimize(r.data());
  }
}

void bm_gram_serial(benchmark::State& state) {
  const auto d = random_matrix(state.range(0), state.range(1), 1);
  for (auto _ : state) {
    auto r = unmix::refimpl::gram(d, 1.0 / static_cast<double>(d.cols()));
    benchmark::DoNotOptimize(r.data());
  }
}

void bm_lagged_gram_parallel(benchmark::State& state) {
  const auto d = random_matrix(state.range(0), state.range(1), 2);
  for (auto _ : state) {
    auto r = unmix::kernels::lagged_gram(d, 1, 1.0 / static_cast<double>(d.cols() - 1));
    benchmark::DoNotOptimize(r.data());
  }
}

void bm_lagged_gram_serial(benchmark::State& state) {
  const auto d = random_matrix(state.range(0), state.range(1), 2);
  for (auto _ : state) {
    auto r = unmix::refimpl::lagged_gram(d, 1, 1.0 / static_cast<double>(d.cols() - 1));
    benchmark::DoNotOptimize(r.data());
  }
}

void bm_matmul_parallel(benchmark::State& state) {
  const auto a = random_matrix(state.range(0), state.range(0), 3);
  const auto b = random_matrix(state.range(0), state.range(1), 4);
  for (auto _ : state) {
    auto c = unmix::kernels::matmul(a, b);
    benchmark::DoNotOptimize(c.data());
  }
}

void bm_matmul_serial(benchmark::State& state) {
  const auto a = random_matrix(state.range(0), state.range(0), 3);
  const auto b = random_matrix(state.range(0), state.range(1), 4);
  for (auto _ : state) {
    auto c = unmix::refimpl::matmul(a, b);
    benchmark::DoNotOptimize(c.data());
  }
}

}  // namespace

BENCHMARK(bm_gram_parallel)->Args({8, 100000})->Args({64, 100000});
BENCHMARK(bm_gram_serial)->Args({8, 100000})->Args({64, 100000});
BENCHMARK(bm_lagged_gram_parallel)->Args({8, 100000})->Args({64, 100000});
BENCHMARK(bm_lagged_gram_serial)->Args({8, 100000})->Args({64, 100000});
BENCHMARK(bm_matmul_parallel)->Args({64, 100000});
BENCHMARK(bm_matmul_serial)->Args({64, 100000});

BENCHMARK_MAIN();
