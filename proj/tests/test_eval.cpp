#include <doctest.h>

#include <cmath>

#include "cspath/eval.hpp"
#include "cspath/rng.hpp"

using namespace cspath;

namespace {

MeasurementMatrix identity_phi(int n) {
  MeasurementMatrix phi;
  phi.rows = n;
  phi.cols = n;
  phi.bits.assign(std::size_t(n) * n, 0);
  for (int i = 0; i < n; ++i) phi.at(i, i) = 1;
  return phi;
}

DenseMatrix random_patches(Eigen::Index count, Eigen::Index n,
                           std::uint64_t seed) {
  SplitMix64 rng(seed);
  DenseMatrix patches(count, n);
  for (Eigen::Index r = 0; r < count; ++r)
    for (Eigen::Index c = 0; c < n; ++c) patches(r, c) = rng.next_double();
  return patches;
}

PatchDataset tiny_dataset(std::uint64_t seed) {
  // Smooth-ish random patches, enough for train/valid/test at 4x4.
  DenseMatrix patches = random_patches(40, 16, seed);
  return split(patches, 4, SplitFractions{}, seed);
}

MCConfig tiny_config() {
  MCConfig cfg;
  cfg.n_iter = 6;
  cfg.measurements = 6;
  cfg.signal_dim = 16;
  cfg.grid_rows = 4;
  cfg.grid_cols = 4;
  cfg.prob = 0.3;
  cfg.theta = 0;
  cfg.lasso_lambda = 0.02;
  cfg.seed = 5;
  cfg.ista_max_iter = 300;
  cfg.ista_tol = 1e-9;
  return cfg;
}

}  // namespace

TEST_CASE("reconstruct at full sampling is lossless") {
  const Dictionary psi = dct_dictionary(4);
  const auto phi = identity_phi(16);
  SplitMix64 rng(1);
  Vector s(16);
  for (Eigen::Index i = 0; i < 16; ++i) s[i] = rng.next_double();
  LassoOptions lo;
  lo.max_iter = 5000;
  lo.tol = 1e-16;
  const Vector recon = reconstruct(phi, psi, s, 1e-10, lo);
  CHECK((recon - s).norm() < 1e-5);
}

TEST_CASE("reconstruct with zero measurement rows yields the zero patch") {
  const Dictionary psi = dct_dictionary(4);
  MeasurementMatrix empty;
  empty.rows = 0;
  empty.cols = 16;
  const Vector no_measurements(0);
  const Vector recon = reconstruct(empty, psi, no_measurements, 0.1);
  CHECK(recon.isZero());
}

TEST_CASE("reconstruct recovers a planted 2-sparse patch") {
  const Dictionary psi = dct_dictionary(4);
  Vector code = Vector::Zero(16);
  code[3] = 1.0;
  code[9] = -0.7;
  const Vector s = psi.atoms * code;
  const auto phi = sample_matrix(10, 16, 0.45, 13);
  LassoOptions lo;
  lo.max_iter = 200000;  // the l1 weight is tiny, support selection is slow
  lo.tol = 1e-18;
  const Vector recon = reconstruct(phi, psi, to_dense(phi) * s, 1e-4, lo);
  CHECK((recon - s).norm() / s.norm() < 1e-2);

  // The momentum variant lands on the same recovery.
  lo.fista = true;
  const Vector fast = reconstruct(phi, psi, to_dense(phi) * s, 1e-4, lo);
  CHECK((fast - s).norm() / s.norm() < 1e-2);
}

TEST_CASE("test_error exact cases") {
  const Dictionary psi = dct_dictionary(4);

  SUBCASE("perfect reconstruction gives (0, 0)") {
    const auto phi = identity_phi(16);
    const auto patches = random_patches(3, 16, 2);
    LassoOptions lo;
    lo.max_iter = 8000;
    lo.tol = 1e-16;
    const auto err = test_error(phi, psi, patches, 1e-10, 1, lo);
    CHECK(err.mse < 1e-10);
    CHECK(err.relative_l2 < 1e-5);
  }

  SUBCASE("zero reconstruction of unit-norm patches gives (1, 1)") {
    MeasurementMatrix zero;
    zero.rows = 4;
    zero.cols = 16;
    zero.bits.assign(64, 0);
    DenseMatrix patches = random_patches(5, 16, 3);
    for (Eigen::Index r = 0; r < patches.rows(); ++r)
      patches.row(r).normalize();
    const auto err = test_error(zero, psi, patches, 0.1);
    CHECK(err.mse == doctest::Approx(1.0));
    CHECK(err.relative_l2 == doctest::Approx(1.0));
  }
}

TEST_CASE("test_error matches hand-computed means on a 3-patch toy set") {
  const Dictionary psi = dct_dictionary(2);
  const auto phi = sample_matrix(2, 4, 0.5, 9);
  const auto patches = random_patches(3, 4, 10);
  LassoOptions lo;
  lo.max_iter = 2000;
  lo.tol = 1e-14;
  const auto err = test_error(phi, psi, patches, 0.05, 1, lo);

  double mse = 0.0, rel = 0.0;
  for (Eigen::Index j = 0; j < 3; ++j) {
    const Vector s = patches.row(j).transpose();
    const Vector recon =
        reconstruct(phi, psi, to_dense(phi) * s, 0.05, lo);
    mse += (s - recon).squaredNorm();
    rel += (s - recon).norm() / s.norm();
  }
  CHECK(err.mse == doctest::Approx(mse / 3.0).epsilon(1e-12));
  CHECK(err.relative_l2 == doctest::Approx(rel / 3.0).epsilon(1e-12));
}

TEST_CASE("test_error skips and counts zero-norm patches") {
  const Dictionary psi = dct_dictionary(2);
  const auto phi = identity_phi(4);
  DenseMatrix patches = DenseMatrix::Zero(2, 4);
  patches.row(0) << 0.5, 0.5, 0.5, 0.5;
  const auto err = test_error(phi, psi, patches, 0.01);
  CHECK(err.skipped_zero_norm == 1);
}

TEST_CASE("test_error aggregation identity on a singleton") {
  const Dictionary psi = dct_dictionary(4);
  const auto phi = sample_matrix(8, 16, 0.4, 20);
  const auto patches = random_patches(1, 16, 21);
  LassoOptions lo;
  lo.max_iter = 3000;
  lo.tol = 1e-14;
  const auto err = test_error(phi, psi, patches, 0.05, 1, lo);
  const Vector s = patches.row(0).transpose();
  const Vector recon = reconstruct(phi, psi, to_dense(phi) * s, 0.05, lo);
  CHECK(err.mse == doctest::Approx((s - recon).squaredNorm()).epsilon(1e-12));
}

TEST_CASE("test_error is independent of the thread count") {
  const Dictionary psi = dct_dictionary(4);
  const auto phi = sample_matrix(8, 16, 0.4, 22);
  const auto patches = random_patches(9, 16, 23);
  const auto serial = test_error(phi, psi, patches, 0.05, 1);
  const auto parallel = test_error(phi, psi, patches, 0.05, 4);
  CHECK(serial.mse == parallel.mse);
  CHECK(serial.relative_l2 == parallel.relative_l2);
}

TEST_CASE("degenerate single-value sweep equals a direct optimize call") {
  const auto data = tiny_dataset(7);
  const Dictionary psi = dct_dictionary(4);
  MCConfig cfg = tiny_config();

  const auto runs = sweep_lambda_path(cfg, psi, data, {0.05}, 1);
  REQUIRE(runs.size() == 1);

  MCConfig direct = cfg;
  direct.lambda_path = 0.05;
  direct.seed = derive_seed(cfg.seed, 0);
  const auto result = optimize(direct, psi, data.subset(Split::valid));
  CHECK(runs[0].best.total_cost == result.best.total_cost);
  CHECK(runs[0].best.path_length == result.best.path_length);
  LassoOptions lo;
  lo.max_iter = cfg.ista_max_iter;
  lo.tol = cfg.ista_tol;
  const auto te = test_error(result.phi, psi, data.subset(Split::test),
                             cfg.lasso_lambda, 1, lo);
  CHECK(runs[0].test_mse == te.mse);
}

TEST_CASE("sweep_p covers both sparsification conditions") {
  const auto data = tiny_dataset(8);
  const Dictionary psi = dct_dictionary(4);
  MCConfig cfg = tiny_config();
  cfg.theta = 3;
  cfg.n_iter = 4;
  const auto runs = sweep_p(cfg, psi, data, {0.2, 0.3}, 2);
  CHECK(runs.size() == 2 * 2 * 2);
  int with_es = 0, without_es = 0;
  for (const auto& run : runs) {
    if (run.theta == 3) ++with_es;
    if (run.theta == 0) ++without_es;
    CHECK(run.knob_name == "p");
  }
  CHECK(with_es == 4);
  CHECK(without_es == 4);

  const auto agg = aggregate_runs(runs);
  CHECK(agg.points.size() == 4);  // 2 p-values x 2 conditions
  CHECK(agg.repeats == 2);
}

TEST_CASE("aggregate_runs reproduces hand-computed mean and spread") {
  std::vector<SweepRun> runs(2);
  runs[0].knob_name = runs[1].knob_name = "p";
  runs[0].knob_value = runs[1].knob_value = 0.1;
  runs[0].theta = runs[1].theta = 3;
  runs[0].test_mse = 1.0;
  runs[1].test_mse = 3.0;
  runs[0].best.path_length = 10.0;
  runs[1].best.path_length = 30.0;
  const auto agg = aggregate_runs(runs);
  REQUIRE(agg.points.size() == 1);
  CHECK(agg.points[0].mean_test_mse == doctest::Approx(2.0));
  CHECK(agg.points[0].std_test_mse == doctest::Approx(1.0));
  CHECK(agg.points[0].mean_path_length == doctest::Approx(20.0));
  CHECK(agg.points[0].std_path_length == doctest::Approx(10.0));
}

TEST_CASE("repeat seeds are shared across knob values") {
  const auto data = tiny_dataset(9);
  const Dictionary psi = dct_dictionary(4);
  MCConfig cfg = tiny_config();
  cfg.n_iter = 5;
  const auto runs = sweep_lambda_path(cfg, psi, data, {0.0, 0.5}, 2);
  REQUIRE(runs.size() == 4);
  CHECK(runs[0].seed == runs[2].seed);  // repeat 0 at both knob values
  CHECK(runs[1].seed == runs[3].seed);
  CHECK(runs[0].seed != runs[1].seed);
}

TEST_CASE("selected path length responds monotonically to lambda_path") {
  const auto data = tiny_dataset(10);
  const Dictionary psi = dct_dictionary(4);
  MCConfig cfg = tiny_config();
  cfg.n_iter = 12;
  const std::vector<double> values = {0.0, 0.01, 0.1, 1.0};
  const auto runs = sweep_lambda_path(cfg, psi, data, values, 3);
  const auto agg = aggregate_runs(runs);
  REQUIRE(agg.points.size() == values.size());
  for (std::size_t i = 1; i < agg.points.size(); ++i)
    CHECK(agg.points[i].mean_path_length <=
          agg.points[i - 1].mean_path_length + 1e-9);
}

TEST_CASE("selected incoherence responds monotonically to lambda_incoh") {
  const auto data = tiny_dataset(11);
  const Dictionary psi = dct_dictionary(4);
  MCConfig cfg = tiny_config();
  cfg.n_iter = 12;
  const std::vector<double> values = {0.0, 0.1, 1.0, 10.0};
  const auto runs = sweep_lambda_incoh(cfg, psi, data, values, 3);
  const auto agg = aggregate_runs(runs);
  for (std::size_t i = 1; i < agg.points.size(); ++i)
    CHECK(agg.points[i].mean_incoherence <=
          agg.points[i - 1].mean_incoherence + 1e-9);
}

TEST_CASE("compare_dictionaries ranks bases by fit to the data") {
  // Ramp patches lie exactly in the degree-1 polynomial span.
  DenseMatrix patches(30, 16);
  SplitMix64 rng(30);
  for (Eigen::Index i = 0; i < patches.rows(); ++i) {
    const double a = rng.next_double(), b = rng.next_double() - 0.5,
                 c = rng.next_double() - 0.5;
    for (int r = 0; r < 4; ++r)
      for (int col = 0; col < 4; ++col)
        patches(i, r * 4 + col) = a + b * col + c * r;
  }
  const auto data = split(patches, 4, SplitFractions{}, 1);

  MCConfig cfg = tiny_config();
  cfg.n_iter = 4;
  cfg.lasso_lambda = 1e-4;
  cfg.ista_max_iter = 2000;
  const auto rows = compare_dictionaries(
      cfg, data,
      {{"dct", dct_dictionary(4)}, {"polynomial", polynomial_dictionary(4, 1)}});
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].test_mse <= rows[0].test_mse);
}

TEST_CASE("full sampling reduces every dictionary to its representation residual") {
  const auto patches = random_patches(12, 16, 40);
  const auto data = split(patches, 4, SplitFractions{}, 2);
  const DenseMatrix test = data.subset(Split::test);
  const auto phi = identity_phi(16);
  LassoOptions lo;
  lo.max_iter = 20000;
  lo.tol = 1e-16;

  for (auto kind : {dct_dictionary(4), polynomial_dictionary(4, 2)}) {
    const auto err = test_error(phi, kind, test, 1e-9, 1, lo);
    // expected: mean squared least-squares residual onto the atom span
    double expected = 0.0;
    for (Eigen::Index j = 0; j < test.rows(); ++j) {
      const Vector s = test.row(j).transpose();
      const Vector c = kind.atoms.colPivHouseholderQr().solve(s);
      expected += (s - kind.atoms * c).squaredNorm();
    }
    expected /= double(test.rows());
    CHECK(err.mse == doctest::Approx(expected).epsilon(1e-4));
  }
}

TEST_CASE("coverage_fraction counts visited cells") {
  auto phi = identity_phi(4);
  CHECK(coverage_fraction(phi) == doctest::Approx(1.0));
  phi.bits.assign(16, 0);
  phi.at(0, 1) = 1;
  phi.at(2, 1) = 1;
  CHECK(coverage_fraction(phi) == doctest::Approx(0.25));
}

TEST_CASE("default p grid spans 0.03 to 0.12") {
  const auto values = default_p_values();
  REQUIRE(values.size() == 10);
  CHECK(values.front() == doctest::Approx(0.03));
  CHECK(values.back() == doctest::Approx(0.12));
}
