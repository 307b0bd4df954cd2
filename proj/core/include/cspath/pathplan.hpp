#pragma once

#include <vector>

#include "cspath/measurement.hpp"

namespace cspath {

struct GridCell {
  int row = 0;
  int col = 0;

  friend bool operator==(const GridCell&, const GridCell&) = default;
};

/// Open tour over grid cells; total_length is the sum of consecutive-pair
/// distances (zero for at most one waypoint).
struct PathPlan {
  std::vector<GridCell> waypoints;
  double total_length = 0.0;
};

enum class DistanceMetric { euclidean, manhattan };

double cell_distance(const GridCell& a, const GridCell& b,
                     DistanceMetric metric = DistanceMetric::euclidean);

/// Cells (i / cols, i % cols) for every set bit i, in row-major order.
/// The indicator length must equal grid_rows * grid_cols.
std::vector<GridCell> unflatten(const Indicator& ind, int grid_rows,
                                int grid_cols);

/// Greedy nearest-neighbor open tour. Starts at the cell nearest to (0,0)
/// and repeatedly hops to the nearest unvisited cell; ties go to the smaller
/// row, then the smaller column, which makes the tour deterministic. An
/// optional 2-opt pass shortens the tour without changing its cell set.
PathPlan nn_path(const std::vector<GridCell>& cells,
                 DistanceMetric metric = DistanceMetric::euclidean,
                 bool two_opt = false);

/// Exact minimal open tour by exhaustive permutation; limited to 9 cells.
PathPlan brute_force_path(const std::vector<GridCell>& cells,
                          DistanceMetric metric = DistanceMetric::euclidean);

}  // namespace cspath
