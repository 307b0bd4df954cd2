#pragma once

#include <string>
#include <vector>

#include "cspath/pathplan.hpp"
#include "cspath/types.hpp"

namespace cspath::svg {

/// One curve of a line chart; band_lo/band_hi, when non-empty, draw a shaded
/// region (e.g. mean +- one standard deviation) behind the line.
struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> band_lo;
  std::vector<double> band_hi;
  std::string color = "#1f77b4";
};

std::string render_line_chart(const std::string& title,
                              const std::string& x_label,
                              const std::string& y_label,
                              const std::vector<Series>& series);

/// Grayscale cell raster; values are clamped to [0, 1], brighter = higher.
std::string render_heatmap(const DenseMatrix& values, const std::string& title);

/// Grid-with-path render: one dot per visited cell, a polyline through the
/// tour, and a marker on the start cell.
std::string render_path_overlay(int grid_rows, int grid_cols,
                                const PathPlan& plan, const std::string& title);

void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<Series>& series);
void write_heatmap(const std::string& path, const DenseMatrix& values,
                   const std::string& title);
void write_path_overlay(const std::string& path, int grid_rows, int grid_cols,
                        const PathPlan& plan, const std::string& title);

}  // namespace cspath::svg
