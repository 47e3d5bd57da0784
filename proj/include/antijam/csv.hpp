#pragma once

#include <string>
#include <vector>

namespace antijam {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

// UTF-8 CSV with RFC-style quoting. Throws std::runtime_error on I/O
// failure.
void emit_csv(const CsvTable& table, const std::string& path);
std::string csv_to_string(const CsvTable& table);

CsvTable parse_csv_string(const std::string& text);
CsvTable parse_csv(const std::string& path);

}  // namespace antijam
