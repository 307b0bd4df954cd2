#pragma once

#include <cstdint>
#include <vector>

#include "cspath/dictionary.hpp"
#include "cspath/types.hpp"

namespace cspath {

/// Binary M x N measurement matrix. A 1 at (q, i) means measurement q reads
/// grid cell i; the union of column supports is the set of cells the robot
/// must visit. Carries its sampling provenance (p, seed, theta) so bundles
/// can be replayed.
struct MeasurementMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> bits;  // row-major, values 0/1
  double gen_p = 0.0;
  std::uint64_t seed = 0;
  int theta = 0;  // sparsification threshold applied, 0 = none

  std::uint8_t at(int r, int c) const { return bits[std::size_t(r) * cols + c]; }
  std::uint8_t& at(int r, int c) { return bits[std::size_t(r) * cols + c]; }
};

/// Binary N-vector marking grid cells that carry at least one measurement.
struct Indicator {
  std::vector<std::uint8_t> bits;

  int popcount() const {
    int n = 0;
    for (auto b : bits) n += b;
    return n;
  }
};

/// Each entry is independently 1 with probability p; deterministic per seed
/// (entries drawn in row-major order from a SplitMix64 stream).
MeasurementMatrix sample_matrix(int rows, int cols, double p,
                                std::uint64_t rng_seed);

/// Enhanced sparsification: zeroes every column whose number of ones is
/// below theta. Idempotent; theta = 0 leaves the matrix untouched.
MeasurementMatrix enhanced_sparsify(const MeasurementMatrix& phi, int theta);

/// Bit i is 1 iff column i has a nonzero sum.
Indicator indicator(const MeasurementMatrix& phi);

/// Removes rows whose sum is zero, preserving order. A zero row measures
/// nothing; keeping or dropping it does not change reconstructions as long
/// as the corresponding zero measurement entries are dropped with it.
MeasurementMatrix drop_zero_rows(const MeasurementMatrix& phi);

std::vector<int> column_sums(const MeasurementMatrix& phi);
std::vector<int> row_sums(const MeasurementMatrix& phi);
int popcount(const MeasurementMatrix& phi);

/// Measurement matrix as a dense double matrix (for Phi*Psi products).
DenseMatrix to_dense(const MeasurementMatrix& phi);

/// Mutual incoherence mu = max |<phi_q, psi_r>| over rows q of Phi and atoms
/// r of Psi, both l2-normalized first; zero vectors contribute 0. Always in
/// [0, 1].
double mutual_incoherence(const MeasurementMatrix& phi, const Dictionary& psi);

}  // namespace cspath
