#include "cspath/montecarlo.hpp"

#include <stdexcept>

#include "cspath/parallel.hpp"
#include "cspath/rng.hpp"

namespace cspath {

void MCConfig::validate() const {
  if (n_iter < 1) throw std::invalid_argument("MCConfig: n_iter < 1");
  if (measurements < 1 || signal_dim < 1)
    throw std::invalid_argument("MCConfig: dimensions must be >= 1");
  if (measurements > signal_dim)
    throw std::invalid_argument("MCConfig: M > N");
  if (!(prob > 0.0 && prob < 1.0))
    throw std::invalid_argument("MCConfig: p must lie in (0, 1)");
  if (theta < 0) throw std::invalid_argument("MCConfig: theta < 0");
  if (lambda_valid < 0.0 || lambda_path < 0.0 || lambda_incoh < 0.0 ||
      lasso_lambda < 0.0)
    throw std::invalid_argument("MCConfig: negative weight");
  if (Eigen::Index(grid_rows) * grid_cols != signal_dim)
    throw std::invalid_argument("MCConfig: grid_rows*grid_cols != N");
}

CandidateEvaluation evaluate_candidate(const MeasurementMatrix& phi,
                                       const Dictionary& psi,
                                       const DenseMatrix& validation,
                                       const MCConfig& cfg,
                                       int candidate_index) {
  if (phi.cols != psi.signal_dim() || validation.cols() != psi.signal_dim())
    throw std::invalid_argument("evaluate_candidate: dimension mismatch");
  if (validation.rows() == 0)
    throw std::invalid_argument("evaluate_candidate: empty validation set");

  CandidateEvaluation eval;
  eval.candidate_index = candidate_index;

  const DenseMatrix phi_dense = to_dense(phi);
  const DenseMatrix sensing = phi_dense * psi.atoms;  // M x K
  LassoOptions lo;
  lo.max_iter = cfg.ista_max_iter;
  lo.tol = cfg.ista_tol;
  lo.fista = cfg.fista;

  double error_sum = 0.0;
  for (Eigen::Index j = 0; j < validation.rows(); ++j) {
    const Vector s = validation.row(j).transpose();
    const Vector measured = phi_dense * s;
    const SparseCode code = lasso_ista(sensing, measured, cfg.lasso_lambda, lo);
    error_sum += (s - psi.atoms * code.coeffs).squaredNorm();
  }
  eval.recon_error = error_sum / double(validation.rows());

  const PathPlan plan = nn_path(unflatten(indicator(phi), cfg.grid_rows,
                                          cfg.grid_cols),
                                cfg.metric, cfg.two_opt);
  eval.path_length = plan.total_length;
  eval.incoherence = mutual_incoherence(phi, psi);
  eval.total_cost = cfg.lambda_valid * eval.recon_error +
                    cfg.lambda_path * eval.path_length +
                    cfg.lambda_incoh * eval.incoherence;
  return eval;
}

OptimizeResult optimize(const MCConfig& cfg, const Dictionary& psi,
                        const DenseMatrix& validation) {
  cfg.validate();
  if (psi.signal_dim() != cfg.signal_dim)
    throw std::invalid_argument("optimize: dictionary N != config N");

  std::vector<CandidateEvaluation> trace(std::size_t(cfg.n_iter));
  parallel_for(std::size_t(cfg.n_iter), cfg.threads, [&](std::size_t r) {
    MeasurementMatrix phi =
        sample_matrix(cfg.measurements, cfg.signal_dim, cfg.prob,
                      cfg.seed ^ std::uint64_t(r));
    if (cfg.theta > 0) phi = enhanced_sparsify(phi, cfg.theta);
    trace[r] = evaluate_candidate(phi, psi, validation, cfg, int(r));
  });

  // Deterministic reduction: strict less-than with index order fixed.
  std::size_t best = 0;
  for (std::size_t r = 1; r < trace.size(); ++r)
    if (trace[r].total_cost < trace[best].total_cost) best = r;

  OptimizeResult result;
  result.best = trace[best];
  result.trace = std::move(trace);
  result.phi = sample_matrix(cfg.measurements, cfg.signal_dim, cfg.prob,
                             cfg.seed ^ std::uint64_t(best));
  if (cfg.theta > 0) result.phi = enhanced_sparsify(result.phi, cfg.theta);
  result.path = nn_path(unflatten(indicator(result.phi), cfg.grid_rows,
                                  cfg.grid_cols),
                        cfg.metric, cfg.two_opt);
  return result;
}

}  // namespace cspath
