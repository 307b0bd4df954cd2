#include <benchmark/benchmark.h>

#include "cspath/dictionary.hpp"
#include "cspath/eval.hpp"
#include "cspath/measurement.hpp"
#include "cspath/montecarlo.hpp"
#include "cspath/pathplan.hpp"
#include "cspath/rng.hpp"

using namespace cspath;

namespace {

DenseMatrix random_patch_rows(Eigen::Index count, Eigen::Index n,
                              std::uint64_t seed) {
  SplitMix64 rng(seed);
  DenseMatrix patches(count, n);
  for (Eigen::Index r = 0; r < count; ++r)
    for (Eigen::Index c = 0; c < n; ++c) patches(r, c) = rng.next_double();
  return patches;
}

MCConfig bench_config(int side, int k) {
  MCConfig cfg;
  cfg.n_iter = 8;
  cfg.measurements = std::max(4, side);
  cfg.signal_dim = side * side;
  cfg.grid_rows = side;
  cfg.grid_cols = side;
  cfg.prob = 0.1;
  cfg.theta = 3;
  cfg.lasso_lambda = 0.05;
  cfg.seed = 1;
  cfg.threads = 1;
  cfg.ista_max_iter = 80;
  cfg.ista_tol = 1e-6;
  (void)k;
  return cfg;
}

}  // namespace

static void BM_SampleMatrix(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_matrix(35, state.range(0), 0.05, seed++));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SampleMatrix)->Range(64, 4096)->Complexity();

static void BM_NnPath(benchmark::State& state) {
  const auto phi = sample_matrix(35, state.range(0) * state.range(0), 0.08, 3);
  const auto cells =
      unflatten(indicator(phi), int(state.range(0)), int(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nn_path(cells));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NnPath)->Range(8, 32)->Complexity();

static void BM_MutualIncoherence(benchmark::State& state) {
  const int side = int(state.range(0));
  const auto phi = sample_matrix(35, side * side, 0.08, 5);
  SplitMix64 rng(6);
  Dictionary psi;
  psi.patch_side = side;
  psi.atoms.resize(side * side, 64);
  for (Eigen::Index r = 0; r < psi.atoms.rows(); ++r)
    for (Eigen::Index c = 0; c < psi.atoms.cols(); ++c)
      psi.atoms(r, c) = rng.next_gaussian();
  for (Eigen::Index c = 0; c < psi.atoms.cols(); ++c)
    psi.atoms.col(c).normalize();
  for (auto _ : state) benchmark::DoNotOptimize(mutual_incoherence(phi, psi));
  state.SetComplexityN(side);
}
BENCHMARK(BM_MutualIncoherence)->Range(8, 32)->Complexity();

static void BM_EvaluateCandidate(benchmark::State& state) {
  const int side = int(state.range(0));
  const auto cfg = bench_config(side, 32);
  const auto phi =
      enhanced_sparsify(sample_matrix(cfg.measurements, cfg.signal_dim,
                                      cfg.prob, 7),
                        cfg.theta);
  const Dictionary psi = dct_dictionary(side);
  const auto valid = random_patch_rows(4, cfg.signal_dim, 8);
  for (auto _ : state)
    benchmark::DoNotOptimize(evaluate_candidate(phi, psi, valid, cfg));
  state.SetComplexityN(side);
}
BENCHMARK(BM_EvaluateCandidate)->Range(8, 16)->Complexity();
