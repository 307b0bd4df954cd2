#include "cspath/pathplan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cspath {

double cell_distance(const GridCell& a, const GridCell& b,
                     DistanceMetric metric) {
  const double dr = double(a.row) - b.row;
  const double dc = double(a.col) - b.col;
  if (metric == DistanceMetric::manhattan) return std::abs(dr) + std::abs(dc);
  return std::hypot(dr, dc);
}

std::vector<GridCell> unflatten(const Indicator& ind, int grid_rows,
                                int grid_cols) {
  if (ind.bits.size() != std::size_t(grid_rows) * grid_cols)
    throw std::invalid_argument("unflatten: indicator length != rows*cols");
  std::vector<GridCell> cells;
  for (std::size_t i = 0; i < ind.bits.size(); ++i)
    if (ind.bits[i])
      cells.push_back({int(i) / grid_cols, int(i) % grid_cols});
  return cells;
}

namespace {

double tour_length(const std::vector<GridCell>& cells,
                   const std::vector<int>& order, DistanceMetric metric) {
  double len = 0.0;
  for (std::size_t i = 1; i < order.size(); ++i)
    len += cell_distance(cells[std::size_t(order[i - 1])],
                         cells[std::size_t(order[i])], metric);
  return len;
}

// Strictly better candidate under (distance, row, col) ordering.
bool closer(double d, const GridCell& cell, double best_d,
            const GridCell& best) {
  if (d != best_d) return d < best_d;
  if (cell.row != best.row) return cell.row < best.row;
  return cell.col < best.col;
}

void two_opt_pass(std::vector<GridCell>& tour, DistanceMetric metric) {
  if (tour.size() < 4) return;
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i + 2 < tour.size(); ++i)
      for (std::size_t j = i + 1; j + 1 < tour.size(); ++j) {
        // Reversing tour[i+1..j] replaces edges (i,i+1) and (j,j+1).
        const double before = cell_distance(tour[i], tour[i + 1], metric) +
                              cell_distance(tour[j], tour[j + 1], metric);
        const double after = cell_distance(tour[i], tour[j], metric) +
                             cell_distance(tour[i + 1], tour[j + 1], metric);
        if (after + 1e-12 < before) {
          std::reverse(tour.begin() + long(i) + 1, tour.begin() + long(j) + 1);
          improved = true;
        }
      }
  }
}

}  // namespace

PathPlan nn_path(const std::vector<GridCell>& cells, DistanceMetric metric,
                 bool two_opt) {
  PathPlan plan;
  if (cells.empty()) return plan;

  const GridCell origin{0, 0};
  std::size_t start = 0;
  for (std::size_t i = 1; i < cells.size(); ++i)
    if (closer(cell_distance(cells[i], origin, metric), cells[i],
               cell_distance(cells[start], origin, metric), cells[start]))
      start = i;

  std::vector<bool> visited(cells.size(), false);
  plan.waypoints.reserve(cells.size());
  plan.waypoints.push_back(cells[start]);
  visited[start] = true;
  std::size_t current = start;

  for (std::size_t step = 1; step < cells.size(); ++step) {
    std::size_t next = cells.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (visited[i]) continue;
      const double d = cell_distance(cells[current], cells[i], metric);
      if (next == cells.size() || closer(d, cells[i], best_d, cells[next])) {
        next = i;
        best_d = d;
      }
    }
    visited[next] = true;
    plan.waypoints.push_back(cells[next]);
    current = next;
  }

  if (two_opt) two_opt_pass(plan.waypoints, metric);

  for (std::size_t i = 1; i < plan.waypoints.size(); ++i)
    plan.total_length +=
        cell_distance(plan.waypoints[i - 1], plan.waypoints[i], metric);
  return plan;
}

PathPlan brute_force_path(const std::vector<GridCell>& cells,
                          DistanceMetric metric) {
  if (cells.size() > 9)
    throw std::invalid_argument("brute_force_path: more than 9 cells");
  PathPlan plan;
  if (cells.empty()) return plan;

  std::vector<int> order(cells.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> best = order;
  double best_len = tour_length(cells, order, metric);
  while (std::next_permutation(order.begin(), order.end())) {
    const double len = tour_length(cells, order, metric);
    if (len < best_len) {
      best_len = len;
      best = order;
    }
  }
  for (int i : best) plan.waypoints.push_back(cells[std::size_t(i)]);
  plan.total_length = best_len;
  return plan;
}

}  // namespace cspath
