#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "coverent/estimators.hpp"

namespace coverent {

// Comma-separated table with a mandatory header and '\n' line endings.
// Fields never contain commas, quotes or newlines, so no quoting is used.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// %.9g
std::string format_value(double x);

std::string to_csv(const CsvTable& table);
// Throws InvalidInput on ragged rows, quotes, or a missing header.
CsvTable parse_csv(std::string_view text);

void write_csv_file(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv_file(const std::filesystem::path& path);

// Columns notion,n,value_bits,method,epsilon,depth. A truncated trace ends
// with a marker row whose method is "truncated" and whose value is empty.
CsvTable trace_table(const EntropyTrace& trace);
// Inverse of trace_table for everything the table carries (aux values and
// the truncation reason are not stored).
EntropyTrace trace_from_table(const CsvTable& table);

}  // namespace coverent
