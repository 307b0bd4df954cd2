#include <doctest.h>

#include <cmath>

#include "cspath/measurement.hpp"
#include "cspath/rng.hpp"

using namespace cspath;

namespace {

MeasurementMatrix from_bits(int rows, int cols,
                            std::initializer_list<int> bits) {
  MeasurementMatrix phi;
  phi.rows = rows;
  phi.cols = cols;
  phi.bits.assign(bits.begin(), bits.end());
  return phi;
}

Dictionary dictionary_from_columns(const DenseMatrix& cols) {
  Dictionary psi;
  psi.atoms = cols;
  psi.patch_side = int(std::lround(std::sqrt(double(cols.rows()))));
  return psi;
}

// Exhaustive reference: normalize explicitly and scan every (row, atom) pair.
double incoherence_oracle(const MeasurementMatrix& phi, const Dictionary& psi) {
  double mu = 0.0;
  for (int q = 0; q < phi.rows; ++q) {
    Vector row(phi.cols);
    for (int c = 0; c < phi.cols; ++c) row[c] = phi.at(q, c);
    if (row.norm() == 0.0) continue;
    row /= row.norm();
    for (Eigen::Index r = 0; r < psi.atom_count(); ++r) {
      Vector atom = psi.atoms.col(r);
      if (atom.norm() == 0.0) continue;
      atom /= atom.norm();
      mu = std::max(mu, std::abs(row.dot(atom)));
    }
  }
  return mu;
}

}  // namespace

TEST_CASE("sample_matrix is deterministic per seed") {
  const auto a = sample_matrix(7, 11, 0.3, 99);
  const auto b = sample_matrix(7, 11, 0.3, 99);
  CHECK(a.bits == b.bits);
  const auto c = sample_matrix(7, 11, 0.3, 100);
  CHECK(a.bits != c.bits);
}

TEST_CASE("sample_matrix empirical rate within binomial bounds") {
  // 1e5 independent 1x1 draws at p = 0.1.
  const int n = 100000;
  const double p = 0.1;
  int ones = 0;
  for (int i = 0; i < n; ++i) ones += sample_matrix(1, 1, p, std::uint64_t(i)).bits[0];
  const double sigma = std::sqrt(p * (1 - p) / n);
  CHECK(std::abs(double(ones) / n - p) < 3.0 * sigma);
}

TEST_CASE("sample_matrix popcount at field scale") {
  const auto phi = sample_matrix(35, 1024, 0.03, 7);
  const double mean = 35.0 * 1024.0 * 0.03;
  const double sigma = std::sqrt(35.0 * 1024.0 * 0.03 * 0.97);
  CHECK(popcount(phi) > mean - 3 * sigma);
  CHECK(popcount(phi) < mean + 3 * sigma);
}

TEST_CASE("sample_matrix rejects invalid p") {
  CHECK_THROWS_AS((void)sample_matrix(2, 2, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)sample_matrix(2, 2, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)sample_matrix(2, 2, -0.5, 1), std::invalid_argument);
}

TEST_CASE("enhanced_sparsify forced example") {
  // column sums (3, 1, 2, 0)
  const auto phi = from_bits(3, 4,
                             {1, 1, 0, 0,
                              1, 0, 1, 0,
                              1, 0, 1, 0});
  SUBCASE("theta = 0 is the identity") {
    CHECK(enhanced_sparsify(phi, 0).bits == phi.bits);
  }
  SUBCASE("theta = 2 zeroes columns 2 and 4") {
    const auto out = enhanced_sparsify(phi, 2);
    CHECK(column_sums(out) == std::vector<int>{3, 0, 2, 0});
    SUBCASE("indicator follows") {
      const auto ind = indicator(out);
      CHECK(ind.bits == std::vector<std::uint8_t>{1, 0, 1, 0});
    }
  }
}

TEST_CASE("enhanced_sparsify with theta = 3 leaves only columns >= 3") {
  const auto phi = sample_matrix(12, 64, 0.25, 3);
  const auto out = enhanced_sparsify(phi, 3);
  for (int s : column_sums(out)) CHECK((s == 0 || s >= 3));
  // idempotent
  CHECK(enhanced_sparsify(out, 3).bits == out.bits);
}

TEST_CASE("enhanced_sparsify never creates ones and never grows columns") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto phi = sample_matrix(9, 40, 0.2, seed);
    for (int theta : {0, 1, 2, 3, 5}) {
      const auto out = enhanced_sparsify(phi, theta);
      const auto before = column_sums(phi);
      const auto after = column_sums(out);
      for (std::size_t c = 0; c < before.size(); ++c)
        CHECK(after[c] <= before[c]);
      for (std::size_t i = 0; i < phi.bits.size(); ++i)
        CHECK(out.bits[i] <= phi.bits[i]);
      CHECK(indicator(out).popcount() <= indicator(phi).popcount());
    }
  }
}

TEST_CASE("indicator basics") {
  MeasurementMatrix zero;
  zero.rows = 3;
  zero.cols = 5;
  zero.bits.assign(15, 0);
  CHECK(indicator(zero).popcount() == 0);

  const auto eye = from_bits(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1});
  CHECK(indicator(eye).bits == std::vector<std::uint8_t>{1, 1, 1});
}

TEST_CASE("drop_zero_rows") {
  const auto clean = from_bits(2, 3, {1, 0, 1, 0, 1, 0});
  CHECK(drop_zero_rows(clean).bits == clean.bits);

  const auto holey = from_bits(3, 3, {1, 0, 1, 0, 0, 0, 0, 1, 0});
  const auto dropped = drop_zero_rows(holey);
  CHECK(dropped.rows == 2);
  CHECK(dropped.bits == std::vector<std::uint8_t>{1, 0, 1, 0, 1, 0});
}

TEST_CASE("zero rows do not change reconstructions") {
  // A zero row contributes a zero measurement and a zero gradient term, so
  // keeping or dropping it leaves the recovered code untouched.
  const auto phi = enhanced_sparsify(sample_matrix(8, 16, 0.18, 41), 3);
  const auto compact = drop_zero_rows(phi);
  REQUIRE(compact.rows < phi.rows);  // the instance really has empty rows

  SplitMix64 rng(42);
  DenseMatrix atoms(16, 8);
  for (Eigen::Index r = 0; r < 16; ++r)
    for (Eigen::Index c = 0; c < 8; ++c) atoms(r, c) = rng.next_gaussian();
  for (Eigen::Index c = 0; c < 8; ++c) atoms.col(c).normalize();

  Vector s(16);
  for (Eigen::Index i = 0; i < 16; ++i) s[i] = rng.next_double();

  const DenseMatrix a_full = to_dense(phi) * atoms;
  const DenseMatrix a_compact = to_dense(compact) * atoms;
  const Vector y_full = to_dense(phi) * s;
  const Vector y_compact = to_dense(compact) * s;

  LassoOptions lo;
  lo.max_iter = 800;
  lo.tol = 1e-12;
  const Vector c_full = lasso_ista(a_full, y_full, 0.05, lo).coeffs;
  const Vector c_compact = lasso_ista(a_compact, y_compact, 0.05, lo).coeffs;
  CHECK((c_full - c_compact).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("mutual_incoherence self-coherence is 1") {
  // atoms = normalized rows of phi
  const auto phi = from_bits(2, 4, {1, 1, 0, 0, 0, 0, 1, 1});
  DenseMatrix atoms(4, 2);
  atoms.setZero();
  atoms(0, 0) = atoms(1, 0) = 1.0 / std::sqrt(2.0);
  atoms(2, 1) = atoms(3, 1) = 1.0 / std::sqrt(2.0);
  CHECK(mutual_incoherence(phi, dictionary_from_columns(atoms)) ==
        doctest::Approx(1.0));
}

TEST_CASE("mutual_incoherence orthogonal rows give 0") {
  const auto phi = from_bits(1, 4, {1, 1, 0, 0});
  DenseMatrix atoms(4, 1);
  atoms << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0, 0.0;
  CHECK(mutual_incoherence(phi, dictionary_from_columns(atoms)) ==
        doctest::Approx(0.0));
}

TEST_CASE("mutual_incoherence matches the exhaustive pair scan") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto phi = sample_matrix(5, 16, 0.3, seed);
    SplitMix64 rng(seed + 1000);
    DenseMatrix atoms(16, 8);
    for (Eigen::Index r = 0; r < atoms.rows(); ++r)
      for (Eigen::Index c = 0; c < atoms.cols(); ++c)
        atoms(r, c) = rng.next_gaussian();
    for (Eigen::Index c = 0; c < atoms.cols(); ++c) atoms.col(c).normalize();
    const auto psi = dictionary_from_columns(atoms);
    const double mu = mutual_incoherence(phi, psi);
    CHECK(mu == doctest::Approx(incoherence_oracle(phi, psi)).epsilon(1e-12));
    CHECK(mu >= 0.0);
    CHECK(mu <= 1.0);
  }
}

TEST_CASE("mutual_incoherence dimension mismatch") {
  const auto phi = sample_matrix(3, 9, 0.4, 2);
  DenseMatrix atoms = DenseMatrix::Identity(16, 4);
  CHECK_THROWS_AS((void)mutual_incoherence(phi, dictionary_from_columns(atoms)),
                  std::invalid_argument);
}

TEST_CASE("zero rows contribute zero incoherence, not NaN") {
  MeasurementMatrix phi;
  phi.rows = 2;
  phi.cols = 4;
  phi.bits.assign(8, 0);  // both rows empty
  DenseMatrix atoms = DenseMatrix::Identity(4, 4);
  const double mu = mutual_incoherence(phi, dictionary_from_columns(atoms));
  CHECK(mu == 0.0);
}
