#include "phasedetect/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace phasedetect::csv {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // drop the sign of negative zero
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::scientific, 16);
  if (ec != std::errc{}) throw std::runtime_error("csv: number formatting failed");
  return std::string(buf.data(), end);
}

Writer::Writer(std::ostream& out, std::vector<std::string> header) : out_(out), columns_(header.size()) {
  write_cells(header);
}

void Writer::row(const std::vector<Cell>& cells) {
  std::vector<std::string> text;
  text.reserve(cells.size());
  for (const auto& cell : cells) {
    if (const auto* d = std::get_if<double>(&cell)) {
      text.push_back(format_number(*d));
    } else if (const auto* i = std::get_if<long long>(&cell)) {
      text.push_back(std::to_string(*i));
    } else {
      text.push_back(std::get<std::string>(cell));
    }
  }
  write_cells(text);
  ++rows_;
}

void Writer::row(const std::vector<double>& values) {
  std::vector<Cell> cells(values.begin(), values.end());
  row(cells);
}

void Writer::write_cells(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw std::logic_error("csv: row width does not match header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    cells.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

}  // namespace phasedetect::csv
