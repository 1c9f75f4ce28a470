#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace shearlab::cli {

using Cell = std::variant<double, std::int64_t, std::string>;

enum class Scale { linear, semilogy, loglog };

struct PlotSpec {
  bool enabled = true;
  Scale scale = Scale::linear;
  std::string x;               ///< column used for the horizontal axis
  std::vector<std::string> y;  ///< one polyline per column
};

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  PlotSpec plot;

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

/// value must satisfy lo ≤ value ≤ hi.
struct Check {
  std::string name;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool pass = false;
};

Check check_at_most(std::string name, double value, double tol);
Check check_between(std::string name, double value, double lo, double hi);

struct Result {
  std::vector<Table> tables;
  std::vector<Check> checks;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
};

std::string format_number(double v);
std::string to_csv(const Table& table);
/// Empty when the plot is disabled or no point survives the axis scaling.
std::string to_svg(const Table& table);

}  // namespace shearlab::cli
