#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cspath/dataset.hpp"
#include "cspath/montecarlo.hpp"

namespace cspath {

/// CS recovery of one patch from its measurement vector:
/// Psi * argmin_c 0.5*|Phi Psi c - s_m|^2 + lambda*|c|_1.
Vector reconstruct(const MeasurementMatrix& phi, const Dictionary& psi,
                   const Vector& measured, double lasso_lambda,
                   const LassoOptions& opt = {});

struct TestError {
  double mse = 0.0;          // mean |s - s_hat|^2
  double relative_l2 = 0.0;  // mean |s - s_hat| / |s|, zero-norm patches skipped
  int skipped_zero_norm = 0;
};

/// Measures every patch with phi, reconstructs, and aggregates both error
/// metrics. Patches are processed independently; the result does not depend
/// on the thread count.
TestError test_error(const MeasurementMatrix& phi, const Dictionary& psi,
                     const DenseMatrix& patches, double lasso_lambda,
                     int threads = 1, const LassoOptions& opt = {});

/// Fraction of grid cells the candidate actually visits.
double coverage_fraction(const MeasurementMatrix& phi);

/// One optimize run inside a sweep, with everything needed to re-aggregate
/// or re-plot without re-running the optimization.
struct SweepRun {
  std::string knob_name;
  double knob_value = 0.0;
  int theta = 0;
  int repeat = 0;
  std::uint64_t seed = 0;
  CandidateEvaluation best;
  double test_mse = 0.0;
  double test_relative = 0.0;
  double coverage = 0.0;
  std::vector<CandidateEvaluation> trace;
};

struct SweepPoint {
  double knob_value = 0.0;
  int theta = 0;
  int repeats = 0;
  double mean_test_mse = 0.0, std_test_mse = 0.0;
  double mean_test_relative = 0.0, std_test_relative = 0.0;
  double mean_path_length = 0.0, std_path_length = 0.0;
  double mean_incoherence = 0.0, std_incoherence = 0.0;
  double mean_coverage = 0.0, std_coverage = 0.0;
};

/// Aggregates over repeat seeds, grouped by (knob value, theta) in first-seen
/// order. Spread is the population standard deviation.
struct SweepResult {
  std::string knob_name;
  std::vector<SweepPoint> points;
  int repeats = 0;
};

SweepResult aggregate_runs(const std::vector<SweepRun>& runs);

/// Sweeps the sampling probability p, running each value with sparsification
/// on (theta = base.theta, or 3 when base disables it) and off (theta = 0).
/// Repeat r of every configuration shares the seed derive_seed(base.seed, r),
/// so conditions see identical random initializations.
std::vector<SweepRun> sweep_p(const MCConfig& base, const Dictionary& psi,
                              const PatchDataset& data,
                              const std::vector<double>& p_values, int repeats);

std::vector<SweepRun> sweep_lambda_path(const MCConfig& base,
                                        const Dictionary& psi,
                                        const PatchDataset& data,
                                        const std::vector<double>& values,
                                        int repeats);

std::vector<SweepRun> sweep_lambda_incoh(const MCConfig& base,
                                         const Dictionary& psi,
                                         const PatchDataset& data,
                                         const std::vector<double>& values,
                                         int repeats);

struct DictionaryComparisonRow {
  std::string name;
  double test_mse = 0.0;
  double test_relative = 0.0;
  double path_length = 0.0;
  double incoherence = 0.0;
  double coverage = 0.0;
};

/// Runs the identical optimization protocol (same config, same seed) once
/// per dictionary and reports test-split errors for each.
std::vector<DictionaryComparisonRow> compare_dictionaries(
    const MCConfig& base, const PatchDataset& data,
    const std::vector<std::pair<std::string, Dictionary>>& dictionaries);

/// Default sweep grid for p, matching the usual 0.03..0.12 step 0.01 range.
std::vector<double> default_p_values();

}  // namespace cspath
