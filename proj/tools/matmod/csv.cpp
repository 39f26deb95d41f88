#include "csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "matmod/errors.hpp"

namespace matmod::cli {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    cells.push_back(trim(cell));
  }
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

// Strict numeric cell: the whole token must parse and be finite.
double parse_number(const std::string& cell, int row, const std::string& col) {
  const std::string loc =
      "row " + std::to_string(row) + ", column " + col;
  if (cell.empty()) {
    throw ArgumentError("parse error: empty cell at " + loc);
  }
  char* end = nullptr;
  const double value = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size()) {
    throw ArgumentError("parse error: non-numeric cell '" + cell + "' at " +
                        loc);
  }
  if (!std::isfinite(value)) {
    throw ArgumentError("parse error: non-finite cell '" + cell + "' at " +
                        loc);
  }
  return value;
}

// Column index parsed from names like y1..yp / x1..xm; 0 when not matching.
int indexed_name(const std::string& name, char prefix) {
  if (name.size() < 2 || name[0] != prefix) return 0;
  int value = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') return 0;
    value = value * 10 + (name[i] - '0');
  }
  return (name[1] == '0') ? 0 : value;
}

}  // namespace

Dataset parse_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ArgumentError("cannot open input file '" + path + "'");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw ArgumentError("schema error: empty file '" + path + "'");
  }
  const std::vector<std::string> header = split_line(line);

  // Map header positions: y1..yp, optional group, optional x1..xm.
  std::map<int, int> y_pos;  // y index -> column position
  std::map<int, int> x_pos;
  int group_col = -1;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string& name = header[c];
    if (name == "group") {
      if (group_col >= 0) {
        throw ArgumentError("schema error: duplicate 'group' column");
      }
      group_col = static_cast<int>(c);
      continue;
    }
    if (int yi = indexed_name(name, 'y'); yi > 0) {
      if (!y_pos.emplace(yi, static_cast<int>(c)).second) {
        throw ArgumentError("schema error: duplicate column '" + name + "'");
      }
      continue;
    }
    if (int xi = indexed_name(name, 'x'); xi > 0) {
      if (!x_pos.emplace(xi, static_cast<int>(c)).second) {
        throw ArgumentError("schema error: duplicate column '" + name + "'");
      }
      continue;
    }
    throw ArgumentError("schema error: unrecognized column '" + name +
                        "' (expected y1..yp, group, x1..xm)");
  }
  const int p = static_cast<int>(y_pos.size());
  if (p == 0) {
    throw ArgumentError("schema error: no response columns y1..yp");
  }
  for (int i = 1; i <= p; ++i) {
    if (!y_pos.count(i)) {
      throw ArgumentError("schema error: response columns must be contiguous "
                          "y1..yp; missing y" +
                          std::to_string(i));
    }
  }
  const int m = static_cast<int>(x_pos.size());
  for (int i = 1; i <= m; ++i) {
    if (!x_pos.count(i)) {
      throw ArgumentError("schema error: regressor columns must be contiguous "
                          "x1..xm; missing x" +
                          std::to_string(i));
    }
  }
  if (group_col >= 0 && m > 0) {
    throw ArgumentError(
        "schema error: group and regressor columns cannot be mixed");
  }

  std::vector<std::vector<double>> y_rows;
  std::vector<std::vector<double>> x_rows;
  std::vector<std::string> groups;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split_line(line);
    if (cells.size() != header.size()) {
      throw ArgumentError("parse error: row " + std::to_string(row) + " has " +
                          std::to_string(cells.size()) + " cells, expected " +
                          std::to_string(header.size()));
    }
    std::vector<double> y(static_cast<std::size_t>(p));
    for (int i = 1; i <= p; ++i) {
      const int c = y_pos[i];
      y[static_cast<std::size_t>(i - 1)] =
          parse_number(cells[static_cast<std::size_t>(c)], row, header[c]);
    }
    y_rows.push_back(std::move(y));
    if (m > 0) {
      std::vector<double> x(static_cast<std::size_t>(m));
      for (int i = 1; i <= m; ++i) {
        const int c = x_pos[i];
        x[static_cast<std::size_t>(i - 1)] =
            parse_number(cells[static_cast<std::size_t>(c)], row, header[c]);
      }
      x_rows.push_back(std::move(x));
    }
    if (group_col >= 0) {
      const std::string label = cells[static_cast<std::size_t>(group_col)];
      if (label.empty()) {
        throw ArgumentError("parse error: empty group label at row " +
                            std::to_string(row));
      }
      groups.push_back(label);
    }
  }
  const int n = static_cast<int>(y_rows.size());
  if (n == 0) {
    throw ArgumentError("schema error: no data rows in '" + path + "'");
  }

  Dataset ds;
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  if (group_col >= 0) {
    // Group-major reordering, stable within groups.
    std::map<std::string, int> first_seen;
    for (int r = 0; r < n; ++r) {
      const std::string& g = groups[static_cast<std::size_t>(r)];
      if (!first_seen.count(g)) {
        const int id = static_cast<int>(ds.group_names.size());
        first_seen.emplace(g, id);
        ds.group_names.push_back(g);
        ds.group_sizes.push_back(0);
      }
      ++ds.group_sizes[static_cast<std::size_t>(first_seen[g])];
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return first_seen[groups[static_cast<std::size_t>(a)]] <
             first_seen[groups[static_cast<std::size_t>(b)]];
    });
  }
  ds.permutation = order;

  ds.values.resize(p, n);
  for (int k = 0; k < n; ++k) {
    const auto& src = y_rows[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
    for (int i = 0; i < p; ++i) {
      ds.values(i, k) = src[static_cast<std::size_t>(i)];
    }
  }
  if (m > 0) {
    ds.regressors.resize(m, n);
    for (int k = 0; k < n; ++k) {
      const auto& src =
          x_rows[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
      for (int i = 0; i < m; ++i) {
        ds.regressors(i, k) = src[static_cast<std::size_t>(i)];
      }
    }
    for (int i = 1; i <= m; ++i) {
      ds.regressor_names.push_back("x" + std::to_string(i));
    }
  }
  return ds;
}

}  // namespace matmod::cli
