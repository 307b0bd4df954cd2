#pragma once

#include <vector>

#include "cspath/types.hpp"

namespace cspath {

/// Sparse coefficient vector together with the l1 weight it was solved at.
struct SparseCode {
  Vector coeffs;
  double lambda = 0.0;
};

/// Proximal operator of lambda*|x|: sign(x) * max(|x| - lambda, 0).
double soft_threshold(double x, double lambda);

/// Largest eigenvalue of A^T A (the squared spectral norm), computed by
/// power iteration on the matvec pair v -> A^T (A v). Throws
/// std::invalid_argument on an all-zero matrix.
double spectral_norm_sq(const DenseMatrix& a);

struct LassoOptions {
  int max_iter = 2000;
  double tol = 1e-8;      // stop when the relative objective decrease falls below
  bool fista = false;     // momentum variant; plain ISTA when false
  const Vector* init = nullptr;            // warm start, zero vector when null
  std::vector<double>* objective_trace = nullptr;  // per-iteration objective, incl. start
};

/// 0.5*|A c - y|^2 + lambda*|c|_1.
double lasso_objective(const DenseMatrix& a, const Vector& y, double lambda,
                       const Vector& c);

/// Minimizes 0.5*|A c - y|^2 + lambda*|c|_1 by iterative soft-thresholding
/// with step 1/L, L = spectral_norm_sq(a). The objective is non-increasing
/// across iterations (asserted per step in debug builds; with fista the
/// assertion applies to the best-so-far objective only). An all-zero or
/// zero-row A yields the zero code: no measurement constrains c and the l1
/// term picks 0.
SparseCode lasso_ista(const DenseMatrix& a, const Vector& y, double lambda,
                      const LassoOptions& opt = {});

}  // namespace cspath
