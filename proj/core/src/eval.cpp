#include "cspath/eval.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "cspath/parallel.hpp"
#include "cspath/rng.hpp"

namespace cspath {

Vector reconstruct(const MeasurementMatrix& phi, const Dictionary& psi,
                   const Vector& measured, double lasso_lambda,
                   const LassoOptions& opt) {
  if (phi.cols != psi.signal_dim())
    throw std::invalid_argument("reconstruct: Phi/Psi dimension mismatch");
  if (measured.size() != phi.rows)
    throw std::invalid_argument("reconstruct: measurement length != M");
  const DenseMatrix sensing = to_dense(phi) * psi.atoms;
  return psi.atoms * lasso_ista(sensing, measured, lasso_lambda, opt).coeffs;
}

TestError test_error(const MeasurementMatrix& phi, const Dictionary& psi,
                     const DenseMatrix& patches, double lasso_lambda,
                     int threads, const LassoOptions& opt) {
  if (patches.cols() != psi.signal_dim())
    throw std::invalid_argument("test_error: patch length != N");
  const Eigen::Index n = patches.rows();
  if (n == 0) throw std::invalid_argument("test_error: empty patch set");

  const DenseMatrix phi_dense = to_dense(phi);
  const DenseMatrix sensing = phi_dense * psi.atoms;

  std::vector<double> sq(static_cast<std::size_t>(n));
  std::vector<double> rel(static_cast<std::size_t>(n));
  std::vector<std::uint8_t> zero_norm(static_cast<std::size_t>(n), 0);
  parallel_for(std::size_t(n), threads, [&](std::size_t j) {
    const Vector s = patches.row(Eigen::Index(j)).transpose();
    const Vector measured = phi_dense * s;
    const Vector recon =
        psi.atoms * lasso_ista(sensing, measured, lasso_lambda, opt).coeffs;
    const double err = (s - recon).norm();
    sq[j] = err * err;
    const double sn = s.norm();
    if (sn > 0.0)
      rel[j] = err / sn;
    else
      zero_norm[j] = 1;
  });

  TestError out;
  double rel_sum = 0.0;
  Eigen::Index rel_count = 0;
  for (std::size_t j = 0; j < std::size_t(n); ++j) {
    out.mse += sq[j];
    if (zero_norm[j]) {
      ++out.skipped_zero_norm;
    } else {
      rel_sum += rel[j];
      ++rel_count;
    }
  }
  out.mse /= double(n);
  out.relative_l2 = rel_count > 0 ? rel_sum / double(rel_count) : 0.0;
  return out;
}

double coverage_fraction(const MeasurementMatrix& phi) {
  if (phi.cols == 0) return 0.0;
  return double(indicator(phi).popcount()) / double(phi.cols);
}

namespace {

SweepRun run_once(const MCConfig& cfg, const Dictionary& psi,
                  const PatchDataset& data, const std::string& knob_name,
                  double knob_value, int repeat) {
  const DenseMatrix validation = data.subset(Split::valid);
  const DenseMatrix test = data.subset(Split::test);
  OptimizeResult opt = optimize(cfg, psi, validation);

  SweepRun run;
  run.knob_name = knob_name;
  run.knob_value = knob_value;
  run.theta = cfg.theta;
  run.repeat = repeat;
  run.seed = cfg.seed;
  run.best = opt.best;
  run.trace = std::move(opt.trace);
  run.coverage = coverage_fraction(opt.phi);
  LassoOptions lo;
  lo.max_iter = cfg.ista_max_iter;
  lo.tol = cfg.ista_tol;
  lo.fista = cfg.fista;
  const TestError te =
      test_error(opt.phi, psi, test, cfg.lasso_lambda, cfg.threads, lo);
  run.test_mse = te.mse;
  run.test_relative = te.relative_l2;
  return run;
}

struct Accumulator {
  std::vector<double> mse, rel, len, mu, cov;
};

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / double(v.size());
}

double std_of(const std::vector<double>& v, double mean) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return std::sqrt(s / double(v.size()));
}

}  // namespace

SweepResult aggregate_runs(const std::vector<SweepRun>& runs) {
  SweepResult result;
  if (runs.empty()) return result;
  result.knob_name = runs.front().knob_name;

  std::vector<std::pair<double, int>> keys;
  std::map<std::pair<double, int>, Accumulator> groups;
  for (const auto& run : runs) {
    const auto key = std::make_pair(run.knob_value, run.theta);
    if (groups.find(key) == groups.end()) keys.push_back(key);
    auto& acc = groups[key];
    acc.mse.push_back(run.test_mse);
    acc.rel.push_back(run.test_relative);
    acc.len.push_back(run.best.path_length);
    acc.mu.push_back(run.best.incoherence);
    acc.cov.push_back(run.coverage);
  }

  for (const auto& key : keys) {
    const auto& acc = groups[key];
    SweepPoint pt;
    pt.knob_value = key.first;
    pt.theta = key.second;
    pt.repeats = int(acc.mse.size());
    pt.mean_test_mse = mean_of(acc.mse);
    pt.std_test_mse = std_of(acc.mse, pt.mean_test_mse);
    pt.mean_test_relative = mean_of(acc.rel);
    pt.std_test_relative = std_of(acc.rel, pt.mean_test_relative);
    pt.mean_path_length = mean_of(acc.len);
    pt.std_path_length = std_of(acc.len, pt.mean_path_length);
    pt.mean_incoherence = mean_of(acc.mu);
    pt.std_incoherence = std_of(acc.mu, pt.mean_incoherence);
    pt.mean_coverage = mean_of(acc.cov);
    pt.std_coverage = std_of(acc.cov, pt.mean_coverage);
    result.points.push_back(pt);
    result.repeats = std::max(result.repeats, pt.repeats);
  }
  return result;
}

std::vector<SweepRun> sweep_p(const MCConfig& base, const Dictionary& psi,
                              const PatchDataset& data,
                              const std::vector<double>& p_values,
                              int repeats) {
  if (repeats < 1) throw std::invalid_argument("sweep_p: repeats < 1");
  const int theta_on = base.theta > 0 ? base.theta : 3;
  std::vector<SweepRun> runs;
  for (int theta : {theta_on, 0})
    for (double p : p_values)
      for (int r = 0; r < repeats; ++r) {
        MCConfig cfg = base;
        cfg.prob = p;
        cfg.theta = theta;
        cfg.seed = derive_seed(base.seed, std::uint64_t(r));
        runs.push_back(run_once(cfg, psi, data, "p", p, r));
      }
  return runs;
}

std::vector<SweepRun> sweep_lambda_path(const MCConfig& base,
                                        const Dictionary& psi,
                                        const PatchDataset& data,
                                        const std::vector<double>& values,
                                        int repeats) {
  if (repeats < 1) throw std::invalid_argument("sweep_lambda_path: repeats < 1");
  std::vector<SweepRun> runs;
  for (double v : values)
    for (int r = 0; r < repeats; ++r) {
      MCConfig cfg = base;
      cfg.lambda_path = v;
      cfg.seed = derive_seed(base.seed, std::uint64_t(r));
      runs.push_back(run_once(cfg, psi, data, "lambda_path", v, r));
    }
  return runs;
}

std::vector<SweepRun> sweep_lambda_incoh(const MCConfig& base,
                                         const Dictionary& psi,
                                         const PatchDataset& data,
                                         const std::vector<double>& values,
                                         int repeats) {
  if (repeats < 1)
    throw std::invalid_argument("sweep_lambda_incoh: repeats < 1");
  std::vector<SweepRun> runs;
  for (double v : values)
    for (int r = 0; r < repeats; ++r) {
      MCConfig cfg = base;
      cfg.lambda_incoh = v;
      cfg.seed = derive_seed(base.seed, std::uint64_t(r));
      runs.push_back(run_once(cfg, psi, data, "lambda_incoh", v, r));
    }
  return runs;
}

std::vector<DictionaryComparisonRow> compare_dictionaries(
    const MCConfig& base, const PatchDataset& data,
    const std::vector<std::pair<std::string, Dictionary>>& dictionaries) {
  std::vector<DictionaryComparisonRow> rows;
  const DenseMatrix validation = data.subset(Split::valid);
  const DenseMatrix test = data.subset(Split::test);
  for (const auto& [name, psi] : dictionaries) {
    OptimizeResult opt = optimize(base, psi, validation);
    LassoOptions lo;
    lo.max_iter = base.ista_max_iter;
    lo.tol = base.ista_tol;
    lo.fista = base.fista;
    const TestError te =
        test_error(opt.phi, psi, test, base.lasso_lambda, base.threads, lo);
    DictionaryComparisonRow row;
    row.name = name;
    row.test_mse = te.mse;
    row.test_relative = te.relative_l2;
    row.path_length = opt.best.path_length;
    row.incoherence = opt.best.incoherence;
    row.coverage = coverage_fraction(opt.phi);
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> default_p_values() {
  std::vector<double> values;
  for (int i = 3; i <= 12; ++i) values.push_back(i / 100.0);
  return values;
}

}  // namespace cspath
