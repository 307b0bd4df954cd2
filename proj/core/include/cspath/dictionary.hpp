#pragma once

#include <cstdint>
#include <vector>

#include "cspath/rng.hpp"
#include "cspath/solver.hpp"
#include "cspath/types.hpp"

namespace cspath {

enum class DictionaryKind { learned, dct, polynomial };

/// Sparsifying basis: N x K atom matrix with unit-l2 columns, N = patch_side^2.
struct Dictionary {
  DenseMatrix atoms;
  DictionaryKind kind = DictionaryKind::learned;
  int patch_side = 0;

  Eigen::Index signal_dim() const { return atoms.rows(); }
  Eigen::Index atom_count() const { return atoms.cols(); }
};

struct DictLearnOptions {
  int threads = 1;
  int ista_max_iter = 400;
  double ista_tol = 1e-7;
};

struct DictLearnResult {
  Dictionary dictionary;
  /// Objective after the sparse-coding pass of each epoch, plus one final
  /// entry for the returned (dictionary, codes) pair.
  std::vector<double> epoch_objective;
};

/// Solves the LASSO for every patch (rows of `patches`) against a fixed
/// dictionary; returns the K x n code matrix. Codes for patch j may be
/// warm-started from column j of `init` when provided.
DenseMatrix sparse_coding_step(const Dictionary& psi, const DenseMatrix& patches,
                               double lambda, const DictLearnOptions& opt = {},
                               const DenseMatrix* init = nullptr);

/// Closed-form ridge update Psi = S C^T (C C^T + eps I)^-1 followed by column
/// renormalization. Columns whose pre-normalization norm falls below 1e-12
/// are revived with a fresh unit vector drawn from `rng`.
Dictionary dictionary_update_step(const DenseMatrix& codes,
                                  const DenseMatrix& patches, SplitMix64& rng);

/// Alternating minimization of sum_i 0.5*|Psi c_i - s_i|^2 + lambda*|c_i|_1.
/// One epoch = sparse coding of all training patches, then one dictionary
/// update. Atoms start from a seeded draw of training patches (without
/// replacement when enough are available), and the coding pass is
/// warm-started from the previous epoch's codes. Bitwise deterministic for a
/// fixed seed regardless of thread count.
DictLearnResult learn_dictionary(const DenseMatrix& patches, int atom_count,
                                 double lambda, int epochs, std::uint64_t seed,
                                 const DictLearnOptions& opt = {});

/// Orthonormal 2D DCT-II basis on patch_side x patch_side, the Kronecker
/// product of two 1D orthonormal DCT-II matrices.
Dictionary dct_dictionary(int patch_side);

/// Monomial atoms x^a y^b with a+b <= max_degree, sampled on the patch grid
/// with coordinates scaled to [-1, 1] and each column l2-normalized. Atom
/// order is by total degree, x-power descending within a degree
/// (1, x, y, x^2, xy, y^2, ...). K = (d+1)(d+2)/2 must not exceed N.
Dictionary polynomial_dictionary(int patch_side, int max_degree);

/// Objective of Eq.-style dictionary learning at the given codes:
/// sum_j 0.5*|Psi c_j - s_j|^2 + lambda*|c_j|_1.
double dictionary_objective(const Dictionary& psi, const DenseMatrix& patches,
                            const DenseMatrix& codes, double lambda);

}  // namespace cspath
