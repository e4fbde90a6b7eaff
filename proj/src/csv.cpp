#include "bakerlab/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace bakerlab {

std::string format_number(double x) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf, static_cast<std::size_t>(n));
}

namespace {

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.emplace_back(line.substr(start));
      return cells;
    }
    cells.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

void append_line(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
}

}  // namespace

std::string to_csv(const CsvTable& table) {
  std::string out;
  append_line(out, table.header);
  for (const auto& row : table.rows) append_line(out, row);
  return out;
}

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  bool first = true;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(pos, end - pos);
    pos = end + 1;
    if (first) {
      table.header = split_line(line);
      first = false;
      continue;
    }
    auto cells = split_line(line);
    if (cells.size() != table.header.size())
      throw std::invalid_argument("csv row width " + std::to_string(cells.size()) +
                                  " does not match header width " +
                                  std::to_string(table.header.size()));
    table.rows.push_back(std::move(cells));
  }
  return table;
}

std::string reserialize_csv(std::string_view text) {
  CsvTable table = parse_csv(text);
  for (auto& row : table.rows) {
    for (auto& cell : row) {
      if (cell.empty()) continue;
      char* end = nullptr;
      const double value = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() + cell.size()) cell = format_number(value);
    }
  }
  return to_csv(table);
}

}  // namespace bakerlab
