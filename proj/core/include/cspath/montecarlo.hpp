#pragma once

#include <cstdint>
#include <vector>

#include "cspath/dictionary.hpp"
#include "cspath/measurement.hpp"
#include "cspath/pathplan.hpp"
#include "cspath/types.hpp"

namespace cspath {

/// Configuration of the random-search optimization over measurement
/// matrices. grid_rows * grid_cols must equal signal_dim.
struct MCConfig {
  int n_iter = 100;
  int measurements = 35;   // M
  int signal_dim = 1024;   // N
  double prob = 0.05;      // Bernoulli parameter for matrix sampling
  int theta = 3;           // column-sum threshold; 0 disables sparsification
  double lambda_valid = 1.0;
  double lambda_path = 0.0;
  double lambda_incoh = 0.0;
  double lasso_lambda = 0.1;
  std::uint64_t seed = 0;
  int grid_rows = 32;
  int grid_cols = 32;
  // Execution knobs; these do not change results, only speed/accuracy budget.
  int threads = 1;
  int ista_max_iter = 2000;
  double ista_tol = 1e-8;
  bool fista = false;  // momentum-accelerated solver; worthwhile when p or N
                       // push the sensing operator's Lipschitz constant up
  DistanceMetric metric = DistanceMetric::euclidean;
  bool two_opt = false;

  void validate() const;
};

/// Score of one candidate matrix: total_cost =
/// lambda_valid * recon_error + lambda_path * path_length +
/// lambda_incoh * incoherence.
struct CandidateEvaluation {
  double recon_error = 0.0;   // mean squared l2 error on validation patches
  double path_length = 0.0;
  double incoherence = 0.0;
  double total_cost = 0.0;
  int candidate_index = 0;
};

struct OptimizeResult {
  MeasurementMatrix phi;
  PathPlan path;
  CandidateEvaluation best;
  std::vector<CandidateEvaluation> trace;  // one entry per candidate, by index
};

/// Evaluates one (already sparsified) candidate: validation reconstruction
/// error through the LASSO, nearest-neighbor path length over the indicator
/// cells, and mutual incoherence against the dictionary.
CandidateEvaluation evaluate_candidate(const MeasurementMatrix& phi,
                                       const Dictionary& psi,
                                       const DenseMatrix& validation,
                                       const MCConfig& cfg,
                                       int candidate_index = 0);

/// Random search: samples cfg.n_iter candidate matrices (candidate r from
/// substream seed XOR r, sparsified when cfg.theta > 0), scores each, and
/// returns the lowest-cost one; ties break toward the lowest index.
/// Candidates are evaluated in parallel but the trace and the winner are
/// independent of the thread count.
OptimizeResult optimize(const MCConfig& cfg, const Dictionary& psi,
                        const DenseMatrix& validation);

}  // namespace cspath
