#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cspath/types.hpp"

namespace cspath {

/// 2D scalar raster, normalized to [0, 1].
struct Field {
  int width = 0;
  int height = 0;
  DenseMatrix values;  // height x width
};

/// Loads a CSV grid (comma-separated rows) or a PGM image (P2 or P5) and
/// normalizes values to [0, 1] by (v - min) / (max - min); a constant field
/// maps to all zeros. Rejects unreadable files, empty or ragged grids, and
/// non-finite cells.
Field load_field(const std::string& path);
Field load_field_csv(std::istream& in);
Field load_field_pgm(std::istream& in);

/// Builds a field directly from values (already any range; normalized here).
Field make_field(DenseMatrix values);

/// Sliding-window extraction: windows at top-left offsets (r*stride,
/// c*stride) lying fully inside the field, row-major order. The count is
/// (floor((H-window)/stride)+1) * (floor((W-window)/stride)+1).
std::vector<DenseMatrix> extract_patches(const Field& field, int window,
                                         int stride);

/// Non-overlapping factor x factor block means; window must divide evenly.
DenseMatrix downsample(const DenseMatrix& patch, int factor);

enum class Split { train, valid, test };

struct SplitFractions {
  double train = 0.70;
  double valid = 0.05;
  double test = 0.25;
};

enum class SplitMode {
  random,   // seeded uniform permutation, then contiguous assignment
  blocked,  // spatial order kept; splits become contiguous bands (the
            // overlap-aware alternative when stride < window)
};

/// Flattened fixed-size patches with a per-patch split label.
struct PatchDataset {
  int patch_side = 0;
  DenseMatrix patches;  // n x N, one flattened patch per row
  std::vector<Split> assignment;
  std::uint64_t seed = 0;

  Eigen::Index count(Split s) const;
  /// Rows of `patches` labeled with the given split, original order.
  DenseMatrix subset(Split s) const;
};

/// Assigns each patch to exactly one split. Counts are floor(f*n) for train
/// and validation; the remainder goes to test.
PatchDataset split(const DenseMatrix& patches, int patch_side,
                   const SplitFractions& fractions, std::uint64_t seed,
                   SplitMode mode = SplitMode::random);

/// Full ingest pipeline: extract, downsample, flatten row-major, split.
PatchDataset build_dataset(const Field& field, int window, int stride,
                           int factor, const SplitFractions& fractions,
                           std::uint64_t seed,
                           SplitMode mode = SplitMode::random);

/// Flattens a patch row-major: entry (r, c) lands at index r*side + c.
Vector flatten(const DenseMatrix& patch);

}  // namespace cspath
