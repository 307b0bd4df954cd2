// Command line front end: ingest -> train-dict -> optimize -> eval, plus
// sweeps and plot regeneration. Every bundle is a plain directory with a
// manifest.json carrying the exact configuration, input hashes and seeds
// needed to replay it; timestamps appear only in manifests and never feed
// any computation.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "cspath/dataset.hpp"
#include "cspath/dictionary.hpp"
#include "cspath/eval.hpp"
#include "cspath/io.hpp"
#include "cspath/montecarlo.hpp"
#include "cspath/svg.hpp"
#include "cspath/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cspath;

namespace {

std::string iso_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::uint64_t file_hash(const std::string& path) {
  return fnv1a64(read_text_file(path));
}

// Config file support: JSON keys mirror the long flag names (without the
// leading dashes). Values act as defaults; explicit command line flags win.
json load_config_file(int argc, char** argv) {
  std::string path;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc)
      path = argv[i + 1];
    else if (arg.rfind("--config=", 0) == 0)
      path = arg.substr(9);
  }
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  in >> j;
  if (!j.is_object()) throw std::runtime_error("config file must hold a JSON object");
  return j;
}

template <typename T>
void from_config(const json& cfg, const char* key, T& target) {
  if (cfg.contains(key)) target = cfg.at(key).get<T>();
}

void write_manifest(const std::string& dir, const std::string& command,
                    std::uint64_t master_seed, const json& config,
                    const json& inputs) {
  json manifest = {
      {"command", command},
      {"tool_version", kVersion},
      {"timestamp_utc", iso_timestamp()},
      {"master_seed", master_seed},
      {"config", config},
      {"inputs", inputs},
  };
  std::ofstream out(fs::path(dir) / "manifest.json", std::ios::binary);
  if (!out) throw std::runtime_error("cannot write manifest in " + dir);
  out << manifest.dump(2) << '\n';
}

Dictionary load_dictionary_arg(const std::string& path) {
  // Accept either the header file itself or a bundle directory.
  if (fs::is_directory(path))
    return load_dictionary((fs::path(path) / "dictionary.json").string());
  return load_dictionary(path);
}

MeasurementMatrix load_phi_arg(const std::string& path) {
  if (fs::is_directory(path))
    return load_measurement((fs::path(path) / "phi.json").string());
  return load_measurement(path);
}

struct McFlags {
  int n_iter = 100;
  int measurements = 35;
  double prob = 0.05;
  int theta = 3;
  double lambda_valid = 1.0;
  double lambda_path = 0.0;
  double lambda_incoh = 0.0;
  double lasso_lambda = 0.1;
  std::uint64_t seed = 0;
  int threads = 0;
  int ista_max_iter = 2000;
  double ista_tol = 1e-8;
  bool fista = false;

  void apply_config(const json& cfg) {
    from_config(cfg, "n-iter", n_iter);
    from_config(cfg, "measurements", measurements);
    from_config(cfg, "prob", prob);
    from_config(cfg, "theta", theta);
    from_config(cfg, "lambda-valid", lambda_valid);
    from_config(cfg, "lambda-path", lambda_path);
    from_config(cfg, "lambda-incoh", lambda_incoh);
    from_config(cfg, "lasso-lambda", lasso_lambda);
    from_config(cfg, "seed", seed);
    from_config(cfg, "threads", threads);
    from_config(cfg, "ista-max-iter", ista_max_iter);
    from_config(cfg, "ista-tol", ista_tol);
    from_config(cfg, "fista", fista);
  }

  void register_options(CLI::App* cmd) {
    cmd->add_option("--n-iter", n_iter, "Monte-Carlo candidate count");
    cmd->add_option("--measurements", measurements, "Measurement rows M");
    cmd->add_option("--prob", prob, "Bernoulli probability p for sampling");
    cmd->add_option("--theta", theta,
                    "Column-sum sparsification threshold (0 disables)");
    cmd->add_option("--lambda-valid", lambda_valid, "Weight of the validation error");
    cmd->add_option("--lambda-path", lambda_path, "Weight of the path length");
    cmd->add_option("--lambda-incoh", lambda_incoh, "Weight of the incoherence");
    cmd->add_option("--lasso-lambda", lasso_lambda, "l1 weight of the recovery solver");
    cmd->add_option("--seed", seed, "Master seed");
    cmd->add_option("--threads", threads, "Parallelism cap (0 = hardware)");
    cmd->add_option("--ista-max-iter", ista_max_iter, "Solver iteration cap");
    cmd->add_option("--ista-tol", ista_tol, "Solver relative-objective tolerance");
    cmd->add_flag("--fista", fista, "Momentum-accelerated recovery solver");
  }

  MCConfig to_config(const PatchDataset& data) const {
    MCConfig cfg;
    cfg.n_iter = n_iter;
    cfg.measurements = measurements;
    cfg.signal_dim = int(data.patches.cols());
    cfg.grid_rows = data.patch_side;
    cfg.grid_cols = data.patch_side;
    cfg.prob = prob;
    cfg.theta = theta;
    cfg.lambda_valid = lambda_valid;
    cfg.lambda_path = lambda_path;
    cfg.lambda_incoh = lambda_incoh;
    cfg.lasso_lambda = lasso_lambda;
    cfg.seed = seed;
    cfg.threads = threads;
    cfg.ista_max_iter = ista_max_iter;
    cfg.ista_tol = ista_tol;
    cfg.fista = fista;
    return cfg;
  }

  json snapshot() const {
    return {{"n-iter", n_iter},
            {"measurements", measurements},
            {"prob", prob},
            {"theta", theta},
            {"lambda-valid", lambda_valid},
            {"lambda-path", lambda_path},
            {"lambda-incoh", lambda_incoh},
            {"lasso-lambda", lasso_lambda},
            {"seed", seed},
            {"ista-max-iter", ista_max_iter},
            {"ista-tol", ista_tol},
            {"fista", fista}};
  }
};

SplitFractions parse_fractions(const std::vector<double>& f) {
  if (f.empty()) return SplitFractions{};
  if (f.size() != 3)
    throw std::runtime_error("--fractions needs exactly three values");
  SplitFractions out;
  out.train = f[0];
  out.valid = f[1];
  out.test = f[2];
  return out;
}

void plot_sweep_bundle(const std::string& bundle, const std::string& out_dir) {
  const auto runs = load_sweep_runs_csv((fs::path(bundle) / "runs.csv").string());
  if (runs.empty()) throw std::runtime_error("runs.csv is empty");
  const auto agg = aggregate_runs(runs);
  const std::string knob = agg.knob_name;

  auto series_for = [&](int theta, const std::string& label,
                        const std::string& color, bool x_is_path) {
    svg::Series s;
    s.label = label;
    s.color = color;
    for (const auto& pt : agg.points) {
      if (pt.theta != theta) continue;
      s.x.push_back(x_is_path ? pt.mean_path_length : pt.knob_value);
      s.y.push_back(pt.mean_test_mse);
      s.band_lo.push_back(pt.mean_test_mse - pt.std_test_mse);
      s.band_hi.push_back(pt.mean_test_mse + pt.std_test_mse);
    }
    return s;
  };

  if (knob == "p") {
    std::vector<int> thetas;
    for (const auto& pt : agg.points)
      if (std::find(thetas.begin(), thetas.end(), pt.theta) == thetas.end())
        thetas.push_back(pt.theta);
    std::vector<svg::Series> series;
    for (int theta : thetas)
      series.push_back(series_for(
          theta,
          theta > 0 ? "with sparsification (theta=" + std::to_string(theta) + ")"
                    : "without sparsification",
          theta > 0 ? "#1f77b4" : "#ff7f0e", true));
    svg::write_line_chart((fs::path(out_dir) / "error_vs_path.svg").string(),
                          "Reconstruction error vs path length", "path length",
                          "test error (MSE)", series);
  } else {
    svg::Series err;
    err.label = "test error";
    svg::Series second;
    const bool incoh = knob == "lambda_incoh";
    second.label = incoh ? "incoherence" : "path length";
    second.color = "#d62728";
    for (const auto& pt : agg.points) {
      err.x.push_back(pt.knob_value);
      err.y.push_back(pt.mean_test_mse);
      err.band_lo.push_back(pt.mean_test_mse - pt.std_test_mse);
      err.band_hi.push_back(pt.mean_test_mse + pt.std_test_mse);
      second.x.push_back(pt.knob_value);
      const double m = incoh ? pt.mean_incoherence : pt.mean_path_length;
      const double s = incoh ? pt.std_incoherence : pt.std_path_length;
      second.y.push_back(m);
      second.band_lo.push_back(m - s);
      second.band_hi.push_back(m + s);
    }
    svg::write_line_chart((fs::path(out_dir) / (knob + "_error.svg")).string(),
                          "Test error vs " + knob, knob, "test error (MSE)",
                          {err});
    svg::write_line_chart(
        (fs::path(out_dir) / (knob + (incoh ? "_incoherence.svg" : "_path.svg")))
            .string(),
        std::string(incoh ? "Incoherence" : "Path length") + " vs " + knob, knob,
        incoh ? "incoherence" : "path length", {second});
  }
}

void plot_optimize_bundle(const std::string& bundle, const std::string& out_dir) {
  const auto phi = load_phi_arg(bundle);
  const auto plan = load_pathplan_json((fs::path(bundle) / "path.json").string());
  const int side = int(std::lround(std::sqrt(double(phi.cols))));
  if (side * side != phi.cols)
    throw std::runtime_error("plot: non-square grid in phi.json");
  svg::write_path_overlay((fs::path(out_dir) / "path.svg").string(), side, side,
                          plan, "Optimized sensing path");

  // Visit-count heatmap of the selected matrix.
  DenseMatrix counts(side, side);
  const auto sums = column_sums(phi);
  double peak = 1.0;
  for (int i = 0; i < phi.cols; ++i) peak = std::max(peak, double(sums[std::size_t(i)]));
  for (int i = 0; i < phi.cols; ++i)
    counts(i / side, i % side) = double(sums[std::size_t(i)]) / peak;
  svg::write_heatmap((fs::path(out_dir) / "phi_counts.svg").string(), counts,
                     "Measurements per grid cell");

  const auto trace_path = fs::path(bundle) / "trace.csv";
  if (fs::exists(trace_path)) {
    const auto trace = load_trace_csv(trace_path.string());
    svg::Series cost;
    cost.label = "candidate cost";
    for (const auto& e : trace) {
      cost.x.push_back(double(e.candidate_index));
      cost.y.push_back(e.total_cost);
    }
    svg::write_line_chart((fs::path(out_dir) / "trace.svg").string(),
                          "Candidate costs", "candidate", "total cost", {cost});
  }
}

int run(int argc, char** argv) {
  const json file_cfg = load_config_file(argc, argv);

  CLI::App app{"Measurement-matrix and sampling-path design toolkit"};
  app.require_subcommand(1);
  std::string config_path;  // consumed in load_config_file; registered so the
                            // flag is accepted everywhere
  app.add_option("--config", config_path, "JSON config file (defaults layer)")
      ->configurable(false);

  // ---- ingest ----
  auto* ingest = app.add_subcommand("ingest", "Field -> patch dataset bundle");
  ingest->fallthrough();
  std::string field_path, ingest_out;
  int window = 128, stride = 32, factor = 4;
  std::uint64_t split_seed = 0;
  bool blocked = false;
  std::vector<double> fractions;
  from_config(file_cfg, "window", window);
  from_config(file_cfg, "stride", stride);
  from_config(file_cfg, "factor", factor);
  from_config(file_cfg, "split-seed", split_seed);
  ingest->add_option("--field", field_path, "Input CSV grid or PGM image")
      ->required();
  ingest->add_option("--window", window, "Sliding window size");
  ingest->add_option("--stride", stride, "Sliding window stride");
  ingest->add_option("--factor", factor, "Block-mean downsampling factor");
  ingest->add_option("--split-seed", split_seed, "Seed of the random split");
  ingest->add_flag("--blocked-split", blocked,
                   "Spatially blocked split instead of a random one");
  ingest->add_option("--fractions", fractions,
                     "train,valid,test fractions (default 0.7,0.05,0.25)")
      ->delimiter(',');
  ingest->add_option("--out", ingest_out, "Output bundle directory")->required();
  ingest->callback([&] {
    const Field field = load_field(field_path);
    const SplitFractions fr = parse_fractions(fractions);
    const auto ds =
        build_dataset(field, window, stride, factor, fr, split_seed,
                      blocked ? SplitMode::blocked : SplitMode::random);
    fs::create_directories(ingest_out);
    save_dataset(ds, ingest_out);
    write_manifest(ingest_out, "ingest", split_seed,
                   {{"field", field_path},
                    {"window", window},
                    {"stride", stride},
                    {"factor", factor},
                    {"split-seed", split_seed},
                    {"blocked-split", blocked},
                    {"fractions", {fr.train, fr.valid, fr.test}},
                    {"counts",
                     {{"train", ds.count(Split::train)},
                      {"valid", ds.count(Split::valid)},
                      {"test", ds.count(Split::test)}}}},
                   {{"field", field_content_hash(field)}});
    std::cout << "patches=" << ds.patches.rows()
              << " train=" << ds.count(Split::train)
              << " valid=" << ds.count(Split::valid)
              << " test=" << ds.count(Split::test) << '\n';
  });

  // ---- train-dict ----
  auto* train = app.add_subcommand("train-dict", "Learn a dictionary from the train split");
  train->fallthrough();
  std::string train_dataset, train_out;
  int atoms = 0, epochs = 30, train_threads = 0;
  double dict_lambda = 0.1;
  std::uint64_t train_seed = 0;
  from_config(file_cfg, "atoms", atoms);
  from_config(file_cfg, "epochs", epochs);
  from_config(file_cfg, "dict-lambda", dict_lambda);
  from_config(file_cfg, "seed", train_seed);
  from_config(file_cfg, "threads", train_threads);
  train->add_option("--dataset", train_dataset, "Dataset bundle directory")
      ->required();
  train->add_option("--atoms", atoms, "Atom count K (0 = N/4)");
  train->add_option("--dict-lambda", dict_lambda, "l1 weight during learning");
  train->add_option("--epochs", epochs, "Training epochs");
  train->add_option("--seed", train_seed, "Learning seed");
  train->add_option("--threads", train_threads, "Parallelism cap (0 = hardware)");
  train->add_option("--out", train_out, "Output bundle directory")->required();
  train->callback([&] {
    const auto ds = load_dataset(train_dataset);
    const DenseMatrix training = ds.subset(Split::train);
    if (training.rows() == 0)
      throw std::runtime_error("dataset has no training patches");
    const int k = atoms > 0 ? atoms : std::max<int>(1, int(ds.patches.cols() / 4));
    DictLearnOptions opt;
    opt.threads = train_threads;
    const auto result =
        learn_dictionary(training, k, dict_lambda, epochs, train_seed, opt);
    fs::create_directories(train_out);
    save_dictionary(result.dictionary,
                    (fs::path(train_out) / "dictionary.json").string());
    std::ofstream obj(fs::path(train_out) / "objective.csv", std::ios::binary);
    obj << "epoch,objective\n";
    for (std::size_t e = 0; e < result.epoch_objective.size(); ++e)
      obj << e << ',' << format_double(result.epoch_objective[e]) << '\n';
    write_manifest(train_out, "train-dict", train_seed,
                   {{"dataset", train_dataset},
                    {"atoms", k},
                    {"dict-lambda", dict_lambda},
                    {"epochs", epochs},
                    {"seed", train_seed}},
                   {{"dataset.json",
                     file_hash((fs::path(train_dataset) / "dataset.json").string())},
                    {"patches.csv",
                     file_hash((fs::path(train_dataset) / "patches.csv").string())}});
    std::cout << "atoms=" << k << " final_objective="
              << format_double(result.epoch_objective.back()) << '\n';
  });

  // ---- optimize ----
  auto* opt_cmd = app.add_subcommand(
      "optimize", "Monte-Carlo search for a measurement matrix and path");
  opt_cmd->fallthrough();
  std::string opt_dataset, opt_dictionary, opt_out;
  McFlags mc;
  mc.apply_config(file_cfg);
  opt_cmd->add_option("--dataset", opt_dataset, "Dataset bundle directory")
      ->required();
  opt_cmd->add_option("--dictionary", opt_dictionary,
                      "Dictionary file or bundle")
      ->required();
  mc.register_options(opt_cmd);
  opt_cmd->add_option("--out", opt_out, "Output bundle directory")->required();
  opt_cmd->callback([&] {
    const auto ds = load_dataset(opt_dataset);
    const auto psi = load_dictionary_arg(opt_dictionary);
    if (psi.signal_dim() != ds.patches.cols())
      throw std::runtime_error("dictionary and dataset disagree on patch size");
    const DenseMatrix validation = ds.subset(Split::valid);
    if (validation.rows() == 0)
      throw std::runtime_error("dataset has no validation patches");
    const MCConfig cfg = mc.to_config(ds);
    const auto result = optimize(cfg, psi, validation);

    fs::create_directories(opt_out);
    save_measurement(result.phi, (fs::path(opt_out) / "phi.json").string());
    save_pathplan_json(result.path, (fs::path(opt_out) / "path.json").string());
    save_pathplan_csv(result.path, (fs::path(opt_out) / "path.csv").string());
    save_trace_csv(result.trace, (fs::path(opt_out) / "trace.csv").string());
    json eval_json = {
        {"candidate_index", result.best.candidate_index},
        {"recon_error", result.best.recon_error},
        {"path_length", result.best.path_length},
        {"incoherence", result.best.incoherence},
        {"total_cost", result.best.total_cost},
        {"coverage", coverage_fraction(result.phi)},
    };
    std::ofstream ej(fs::path(opt_out) / "eval.json", std::ios::binary);
    ej << eval_json.dump(2) << '\n';
    json config = mc.snapshot();
    config["dataset"] = opt_dataset;
    config["dictionary"] = opt_dictionary;
    write_manifest(
        opt_out, "optimize", mc.seed, config,
        {{"dataset.json",
          file_hash((fs::path(opt_dataset) / "dataset.json").string())},
         {"dictionary",
          file_hash(fs::is_directory(opt_dictionary)
                        ? (fs::path(opt_dictionary) / "dictionary.json").string()
                        : opt_dictionary)}});
    std::cout << "best_index=" << result.best.candidate_index
              << " cost=" << format_double(result.best.total_cost)
              << " path_length=" << format_double(result.best.path_length)
              << " coverage=" << format_double(coverage_fraction(result.phi))
              << '\n';
  });

  // ---- eval ----
  auto* eval_cmd =
      app.add_subcommand("eval", "Test-split reconstruction metrics for a matrix");
  eval_cmd->fallthrough();
  std::string eval_dataset, eval_dictionary, eval_phi, eval_out;
  double eval_lasso = 0.1;
  int eval_threads = 0;
  from_config(file_cfg, "lasso-lambda", eval_lasso);
  from_config(file_cfg, "threads", eval_threads);
  eval_cmd->add_option("--dataset", eval_dataset, "Dataset bundle directory")
      ->required();
  eval_cmd->add_option("--dictionary", eval_dictionary, "Dictionary file or bundle")
      ->required();
  eval_cmd->add_option("--phi", eval_phi, "Measurement matrix file or bundle")
      ->required();
  eval_cmd->add_option("--lasso-lambda", eval_lasso, "l1 weight of the recovery solver");
  eval_cmd->add_option("--threads", eval_threads, "Parallelism cap (0 = hardware)");
  eval_cmd->add_option("--out", eval_out, "Output directory")->required();
  eval_cmd->callback([&] {
    const auto ds = load_dataset(eval_dataset);
    const auto psi = load_dictionary_arg(eval_dictionary);
    const auto phi = load_phi_arg(eval_phi);
    if (psi.signal_dim() != ds.patches.cols() || phi.cols != ds.patches.cols())
      throw std::runtime_error("dimension mismatch between inputs");
    const DenseMatrix test = ds.subset(Split::test);
    if (test.rows() == 0) throw std::runtime_error("dataset has no test patches");
    const auto err = test_error(phi, psi, test, eval_lasso, eval_threads);
    const auto plan = nn_path(unflatten(indicator(phi), ds.patch_side, ds.patch_side));

    fs::create_directories(eval_out);
    json metrics = {
        {"test_mse", err.mse},
        {"test_relative_l2", err.relative_l2},
        {"skipped_zero_norm", err.skipped_zero_norm},
        {"coverage", coverage_fraction(phi)},
        {"path_length", plan.total_length},
        {"incoherence", mutual_incoherence(phi, psi)},
        {"test_patches", test.rows()},
    };
    std::ofstream mj(fs::path(eval_out) / "metrics.json", std::ios::binary);
    mj << metrics.dump(2) << '\n';

    // Ground truth vs reconstruction of the first test patch.
    const Vector s = test.row(0).transpose();
    const Vector recon = reconstruct(phi, psi, to_dense(phi) * s, eval_lasso);
    DenseMatrix truth_img(ds.patch_side, ds.patch_side);
    DenseMatrix recon_img(ds.patch_side, ds.patch_side);
    for (int r = 0; r < ds.patch_side; ++r)
      for (int c = 0; c < ds.patch_side; ++c) {
        truth_img(r, c) = s[r * ds.patch_side + c];
        recon_img(r, c) = recon[r * ds.patch_side + c];
      }
    svg::write_heatmap((fs::path(eval_out) / "truth_patch.svg").string(),
                       truth_img, "Ground truth patch");
    svg::write_heatmap((fs::path(eval_out) / "recon_patch.svg").string(),
                       recon_img, "Reconstructed patch");

    write_manifest(eval_out, "eval", 0,
                   {{"dataset", eval_dataset},
                    {"dictionary", eval_dictionary},
                    {"phi", eval_phi},
                    {"lasso-lambda", eval_lasso}},
                   {{"dataset.json",
                     file_hash((fs::path(eval_dataset) / "dataset.json").string())}});
    std::cout << "test_mse=" << format_double(err.mse)
              << " test_relative=" << format_double(err.relative_l2) << '\n';
  });

  // ---- sweep ----
  auto* sweep_cmd = app.add_subcommand("sweep", "Hyper-parameter sweeps");
  sweep_cmd->fallthrough();
  std::string sweep_kind, sweep_dataset, sweep_dictionary, sweep_out;
  std::vector<double> sweep_values;
  int repeats = 3, poly_degree = 5;
  McFlags sweep_mc;
  sweep_mc.apply_config(file_cfg);
  from_config(file_cfg, "repeats", repeats);
  sweep_cmd->add_option("--kind", sweep_kind,
                        "One of: p, lambda_path, lambda_incoh, dict")
      ->required();
  sweep_cmd->add_option("--dataset", sweep_dataset, "Dataset bundle directory")
      ->required();
  sweep_cmd->add_option("--dictionary", sweep_dictionary,
                        "Dictionary file or bundle")
      ->required();
  sweep_cmd->add_option("--values", sweep_values, "Knob values (comma separated)")
      ->delimiter(',');
  sweep_cmd->add_option("--repeats", repeats, "Independent trials per value");
  sweep_cmd->add_option("--poly-degree", poly_degree,
                        "Polynomial dictionary degree for --kind dict");
  sweep_mc.register_options(sweep_cmd);
  sweep_cmd->add_option("--out", sweep_out, "Output bundle directory")->required();
  sweep_cmd->callback([&] {
    const auto ds = load_dataset(sweep_dataset);
    const auto psi = load_dictionary_arg(sweep_dictionary);
    if (psi.signal_dim() != ds.patches.cols())
      throw std::runtime_error("dictionary and dataset disagree on patch size");
    const MCConfig base = sweep_mc.to_config(ds);
    fs::create_directories(sweep_out);

    if (sweep_kind == "dict") {
      MCConfig cfg = base;
      cfg.seed = derive_seed(base.seed, 0);
      const auto rows = compare_dictionaries(
          cfg, ds,
          {{"learned", psi},
           {"dct", dct_dictionary(ds.patch_side)},
           {"polynomial", polynomial_dictionary(ds.patch_side, poly_degree)}});
      std::ofstream out(fs::path(sweep_out) / "dict_comparison.csv",
                        std::ios::binary);
      out << "dictionary,test_mse,test_relative,path_length,incoherence,"
             "coverage\n";
      svg::Series series;
      series.label = "test error";
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        out << row.name << ',' << format_double(row.test_mse) << ','
            << format_double(row.test_relative) << ','
            << format_double(row.path_length) << ','
            << format_double(row.incoherence) << ','
            << format_double(row.coverage) << '\n';
        series.x.push_back(double(i));
        series.y.push_back(row.test_mse);
      }
      svg::write_line_chart((fs::path(sweep_out) / "dict_comparison.svg").string(),
                            "Dictionary comparison (0=learned, 1=dct, 2=polynomial)",
                            "dictionary", "test error (MSE)", {series});
    } else {
      std::vector<SweepRun> runs;
      if (sweep_kind == "p") {
        const auto values =
            sweep_values.empty() ? default_p_values() : sweep_values;
        runs = sweep_p(base, psi, ds, values, repeats);
      } else if (sweep_kind == "lambda_path") {
        if (sweep_values.empty()) throw std::runtime_error("--values is required");
        runs = sweep_lambda_path(base, psi, ds, sweep_values, repeats);
      } else if (sweep_kind == "lambda_incoh") {
        if (sweep_values.empty()) throw std::runtime_error("--values is required");
        runs = sweep_lambda_incoh(base, psi, ds, sweep_values, repeats);
      } else {
        throw std::runtime_error("unknown sweep kind: " + sweep_kind);
      }
      save_sweep_runs_csv(runs, (fs::path(sweep_out) / "runs.csv").string());
      save_sweep_points_csv(aggregate_runs(runs),
                            (fs::path(sweep_out) / "summary.csv").string());
      for (const auto& run : runs) {
        const std::string name = "trace_" + run.knob_name + short_num(run.knob_value) +
                                 "_theta" + std::to_string(run.theta) + "_rep" +
                                 std::to_string(run.repeat) + ".csv";
        save_trace_csv(run.trace, (fs::path(sweep_out) / name).string());
      }
      plot_sweep_bundle(sweep_out, sweep_out);
    }

    json config = sweep_mc.snapshot();
    config["kind"] = sweep_kind;
    config["values"] = sweep_values;
    config["repeats"] = repeats;
    config["dataset"] = sweep_dataset;
    config["dictionary"] = sweep_dictionary;
    write_manifest(
        sweep_out, "sweep", sweep_mc.seed, config,
        {{"dataset.json",
          file_hash((fs::path(sweep_dataset) / "dataset.json").string())}});
    std::cout << "sweep kind=" << sweep_kind << " out=" << sweep_out << '\n';
  });

  // ---- plot ----
  auto* plot_cmd = app.add_subcommand("plot", "Regenerate SVGs from a bundle");
  plot_cmd->fallthrough();
  std::string plot_bundle, plot_out;
  plot_cmd->add_option("--bundle", plot_bundle, "Bundle directory")->required();
  plot_cmd->add_option("--out", plot_out, "Output directory (default: bundle)");
  plot_cmd->callback([&] {
    const std::string out_dir = plot_out.empty() ? plot_bundle : plot_out;
    fs::create_directories(out_dir);
    if (fs::exists(fs::path(plot_bundle) / "runs.csv"))
      plot_sweep_bundle(plot_bundle, out_dir);
    else if (fs::exists(fs::path(plot_bundle) / "phi.json"))
      plot_optimize_bundle(plot_bundle, out_dir);
    else
      throw std::runtime_error("bundle has neither runs.csv nor phi.json");
    std::cout << "plots written to " << out_dir << '\n';
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
