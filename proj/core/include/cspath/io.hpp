#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cspath/dataset.hpp"
#include "cspath/dictionary.hpp"
#include "cspath/eval.hpp"
#include "cspath/measurement.hpp"
#include "cspath/pathplan.hpp"

namespace cspath {

/// Shortest exact decimal form of a double (17 significant digits), chosen so
/// every serialized value round-trips bit-exactly.
std::string format_double(double v);

/// FNV-1a 64-bit over a byte string; used for content hashes in manifests.
std::uint64_t fnv1a64(std::string_view bytes);

/// Hash of the normalized field values; stable across platforms because it
/// runs over the decimal representations, not raw memory.
std::uint64_t field_content_hash(const Field& field);

// Dictionary files: a JSON header (kind, n, k, patch_side, payload) next to a
// CSV matrix payload with one row per signal dimension.
void save_dictionary(const Dictionary& psi, const std::string& json_path);
Dictionary load_dictionary(const std::string& json_path);

// Measurement matrices: a single JSON file carrying the header
// (m, n, p, seed, theta) and the bits as row-major strings.
void save_measurement(const MeasurementMatrix& phi, const std::string& path);
MeasurementMatrix load_measurement(const std::string& path);

void save_pathplan_json(const PathPlan& plan, const std::string& path);
PathPlan load_pathplan_json(const std::string& path);
void save_pathplan_csv(const PathPlan& plan, const std::string& path);

// Candidate traces: CSV with columns r, E, L, mu, C.
void save_trace_csv(const std::vector<CandidateEvaluation>& trace,
                    const std::string& path);
std::vector<CandidateEvaluation> load_trace_csv(const std::string& path);

// Dataset bundles: <dir>/dataset.json plus <dir>/patches.csv.
void save_dataset(const PatchDataset& ds, const std::string& dir);
PatchDataset load_dataset(const std::string& dir);

// Sweep runs: one CSV row per optimize run (traces are stored separately).
void save_sweep_runs_csv(const std::vector<SweepRun>& runs,
                         const std::string& path);
std::vector<SweepRun> load_sweep_runs_csv(const std::string& path);

// Aggregated sweep points, one row per (knob value, theta).
void save_sweep_points_csv(const SweepResult& result, const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace cspath
