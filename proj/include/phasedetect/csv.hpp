#pragma once

// Locale-independent CSV output. Numbers are written in scientific notation
// with 17 significant digits so that identical inputs give byte-identical
// files and every double round-trips.

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace phasedetect::csv {

std::string format_number(double value);

using Cell = std::variant<double, long long, std::string>;

class Writer {
 public:
  Writer(std::ostream& out, std::vector<std::string> header);

  void row(const std::vector<Cell>& cells);
  void row(const std::vector<double>& values);
  void row(std::initializer_list<double> values) { row(std::vector<double>(values)); }

  std::size_t columns() const { return columns_; }
  std::size_t rows() const { return rows_; }

 private:
  void write_cells(const std::vector<std::string>& cells);

  std::ostream& out_;
  std::size_t columns_;
  std::size_t rows_ = 0;
};

/// Splits one CSV line on ','. No quoting support; the writer never quotes.
std::vector<std::string> split_line(std::string_view line);

}  // namespace phasedetect::csv
