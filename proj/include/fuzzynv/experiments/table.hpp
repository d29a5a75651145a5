#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace fuzzynv::experiments {

/// Empty cells (monostate) mark undefined values, e.g. a ratio whose
/// denominator is not positive.
using Cell = std::variant<std::monostate, std::string, double, std::int64_t>;

struct PlotSpec {
  std::string x;                    ///< column on the horizontal axis
  std::vector<std::string> y;       ///< one SVG per column
  std::vector<std::string> series;  ///< columns whose values identify a line
};

struct Table {
  std::string name;  ///< file stem
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  PlotSpec plot;

  std::size_t column(const std::string& c) const;
};

/// Shortest round-trip text with at most 9 significant digits; '.' decimal
/// separator regardless of locale.
std::string format_number(double v);
std::string format_cell(const Cell& c);

std::string to_csv(const Table& t);
std::string to_svg(const Table& t, const std::string& y_column);

/// Writes <dir>/<name>.csv (and one <name>_<y>.svg per plotted column when
/// svg is set). Returns the files written.
std::vector<std::filesystem::path> write_table(const Table& t, const std::filesystem::path& dir, bool svg);

}  // namespace fuzzynv::experiments
