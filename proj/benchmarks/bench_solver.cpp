#include <benchmark/benchmark.h>

#include "cspath/rng.hpp"
#include "cspath/solver.hpp"

using namespace cspath;

namespace {

DenseMatrix random_matrix(Eigen::Index rows, Eigen::Index cols,
                          std::uint64_t seed) {
  SplitMix64 rng(seed);
  DenseMatrix a(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) a(r, c) = rng.next_gaussian();
  return a;
}

Vector random_vector(Eigen::Index n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.next_gaussian();
  return v;
}

}  // namespace

static void BM_SpectralNormSq(benchmark::State& state) {
  const auto a = random_matrix(state.range(0), state.range(0) * 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_norm_sq(a));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SpectralNormSq)->Range(8, 256)->Complexity();

static void BM_LassoIsta(benchmark::State& state) {
  const auto m = state.range(0);
  const auto a = random_matrix(m, 2 * m, 2);
  const auto y = random_vector(m, 3);
  LassoOptions opt;
  opt.max_iter = 200;
  opt.tol = 1e-8;
  for (auto _ : state) benchmark::DoNotOptimize(lasso_ista(a, y, 0.1, opt));
  state.SetComplexityN(m);
}
BENCHMARK(BM_LassoIsta)->Range(8, 128)->Complexity();

static void BM_SoftThreshold(benchmark::State& state) {
  SplitMix64 rng(4);
  double acc = 0.0;
  for (auto _ : state) acc += soft_threshold(rng.next_double() - 0.5, 0.2);
  benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_SoftThreshold);
