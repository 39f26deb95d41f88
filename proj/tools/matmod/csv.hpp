#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

// CSV ingestion for the matmod CLI.
//
// Expected layout: one observation per row, header required. Response
// components are columns y1..yp; an optional `group` column carries a
// factor label; optional columns x1..xm carry regressors. Group and
// regressor columns cannot be mixed. Grouped data is reordered group-major
// (groups in first-appearance order, file order within each group) and the
// applied permutation is kept for the report.

namespace matmod::cli {

struct Dataset {
  Eigen::MatrixXd values;  // p x n, one observation per column

  std::vector<std::string> group_names;  // first-appearance order
  std::vector<int> group_sizes;          // aligned with group_names
  std::vector<int> permutation;  // column k came from data row permutation[k]

  Eigen::MatrixXd regressors;  // m x n, or 0 x 0 when absent
  std::vector<std::string> regressor_names;

  int p() const { return static_cast<int>(values.rows()); }
  int n() const { return static_cast<int>(values.cols()); }
  bool grouped() const { return !group_names.empty(); }
  bool has_regressors() const { return regressors.rows() > 0; }
};

// Throws matmod::ArgumentError with a location-bearing message on malformed
// input (errors name the 1-based data row and the column header).
Dataset parse_csv(const std::string& path);

}  // namespace matmod::cli
