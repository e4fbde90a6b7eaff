#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace bakerlab {

/// Shortest-round-trip-safe text for a double: printf "%.17g".
std::string format_number(double x);

/// Comma-separated table with a header row. Cells never contain commas or quotes.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Header then rows, each line terminated by '\n'.
std::string to_csv(const CsvTable& table);

/// Throws std::invalid_argument on a row whose width differs from the header.
CsvTable parse_csv(std::string_view text);

/// Parses, reads every numeric cell back as a double, and formats it again.
/// Byte-identical to the input for anything this library emitted.
std::string reserialize_csv(std::string_view text);

}  // namespace bakerlab
