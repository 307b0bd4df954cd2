#include "cspath/measurement.hpp"

#include <cmath>
#include <stdexcept>

#include "cspath/rng.hpp"

namespace cspath {

MeasurementMatrix sample_matrix(int rows, int cols, double p,
                                std::uint64_t rng_seed) {
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("sample_matrix: dimensions must be >= 1");
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("sample_matrix: p must lie in (0, 1)");

  MeasurementMatrix phi;
  phi.rows = rows;
  phi.cols = cols;
  phi.gen_p = p;
  phi.seed = rng_seed;
  phi.bits.resize(std::size_t(rows) * cols);
  SplitMix64 rng(rng_seed);
  for (auto& b : phi.bits) b = rng.next_double() < p ? 1 : 0;
  return phi;
}

MeasurementMatrix enhanced_sparsify(const MeasurementMatrix& phi, int theta) {
  if (theta < 0) throw std::invalid_argument("enhanced_sparsify: theta < 0");
  MeasurementMatrix out = phi;
  out.theta = theta;
  if (theta == 0) return out;
  const auto sums = column_sums(phi);
  for (int c = 0; c < phi.cols; ++c)
    if (sums[std::size_t(c)] < theta)
      for (int r = 0; r < phi.rows; ++r) out.at(r, c) = 0;
  return out;
}

Indicator indicator(const MeasurementMatrix& phi) {
  Indicator ind;
  ind.bits.assign(std::size_t(phi.cols), 0);
  for (int c = 0; c < phi.cols; ++c)
    for (int r = 0; r < phi.rows; ++r)
      if (phi.at(r, c)) {
        ind.bits[std::size_t(c)] = 1;
        break;
      }
  return ind;
}

MeasurementMatrix drop_zero_rows(const MeasurementMatrix& phi) {
  MeasurementMatrix out;
  out.cols = phi.cols;
  out.gen_p = phi.gen_p;
  out.seed = phi.seed;
  out.theta = phi.theta;
  for (int r = 0; r < phi.rows; ++r) {
    bool any = false;
    for (int c = 0; c < phi.cols && !any; ++c) any = phi.at(r, c) != 0;
    if (!any) continue;
    out.bits.insert(out.bits.end(), phi.bits.begin() + std::size_t(r) * phi.cols,
                    phi.bits.begin() + std::size_t(r + 1) * phi.cols);
    ++out.rows;
  }
  return out;
}

std::vector<int> column_sums(const MeasurementMatrix& phi) {
  std::vector<int> sums(std::size_t(phi.cols), 0);
  for (int r = 0; r < phi.rows; ++r)
    for (int c = 0; c < phi.cols; ++c) sums[std::size_t(c)] += phi.at(r, c);
  return sums;
}

std::vector<int> row_sums(const MeasurementMatrix& phi) {
  std::vector<int> sums(std::size_t(phi.rows), 0);
  for (int r = 0; r < phi.rows; ++r)
    for (int c = 0; c < phi.cols; ++c) sums[std::size_t(r)] += phi.at(r, c);
  return sums;
}

int popcount(const MeasurementMatrix& phi) {
  int n = 0;
  for (auto b : phi.bits) n += b;
  return n;
}

DenseMatrix to_dense(const MeasurementMatrix& phi) {
  DenseMatrix a(phi.rows, phi.cols);
  for (int r = 0; r < phi.rows; ++r)
    for (int c = 0; c < phi.cols; ++c) a(r, c) = phi.at(r, c);
  return a;
}

double mutual_incoherence(const MeasurementMatrix& phi, const Dictionary& psi) {
  if (phi.cols != psi.signal_dim())
    throw std::invalid_argument(
        "mutual_incoherence: Phi columns != dictionary signal dimension");

  double mu = 0.0;
  for (int q = 0; q < phi.rows; ++q) {
    // Binary row: squared norm equals its popcount.
    double row_norm_sq = 0.0;
    for (int c = 0; c < phi.cols; ++c) row_norm_sq += phi.at(q, c);
    if (row_norm_sq == 0.0) continue;
    const double inv_row_norm = 1.0 / std::sqrt(row_norm_sq);
    for (Eigen::Index r = 0; r < psi.atom_count(); ++r) {
      double dot = 0.0;
      for (int c = 0; c < phi.cols; ++c)
        if (phi.at(q, c)) dot += psi.atoms(c, r);
      const double atom_norm = psi.atoms.col(r).norm();
      if (atom_norm == 0.0) continue;
      const double v = std::abs(dot) * inv_row_norm / atom_norm;
      if (v > mu) mu = v;
    }
  }
  return std::min(mu, 1.0);  // guard against |<u,v>| ~ 1 + ulp roundoff
}

}  // namespace cspath
