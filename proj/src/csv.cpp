#include "coverent/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "coverent/errors.hpp"

namespace coverent {

std::string format_value(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::string to_csv(const CsvTable& table) {
  std::string out;
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out.push_back(',');
      out += fields[i];
    }
    out.push_back('\n');
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
  return out;
}

CsvTable parse_csv(std::string_view text) {
  CsvTable t;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    const auto line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (line.find_first_of("\"\r") != std::string_view::npos) {
      throw InvalidInput("csv line " + std::to_string(line_no) + ": quotes and carriage returns are not supported");
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      fields.emplace_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (t.header.empty()) {
      t.header = std::move(fields);
    } else if (fields.size() != t.header.size()) {
      throw InvalidInput("csv line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                         " fields, header has " + std::to_string(t.header.size()));
    } else {
      t.rows.push_back(std::move(fields));
    }
  }
  if (t.header.empty()) throw InvalidInput("csv input has no header row");
  return t;
}

void write_csv_file(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot write " + path.string());
  f << to_csv(table);
}

CsvTable read_csv_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot read " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_csv(ss.str());
}

namespace {

const std::vector<std::string> kTraceHeader{"notion", "n", "value_bits", "method", "epsilon", "depth"};

double to_double(const std::string& s, const char* column) {
  double x = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw InvalidInput(std::string("trace column ") + column + ": not a number: '" + s + "'");
  }
  return x;
}

int to_int(const std::string& s, const char* column) {
  int x = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw InvalidInput(std::string("trace column ") + column + ": not an integer: '" + s + "'");
  }
  return x;
}

}  // namespace

CsvTable trace_table(const EntropyTrace& trace) {
  CsvTable t{kTraceHeader, {}};
  const std::string notion(notion_name(trace.notion));
  for (const auto& r : trace.records) {
    t.rows.push_back({notion, std::to_string(r.n), format_value(r.value), std::string(method_name(r.method)),
                      r.epsilon ? format_value(*r.epsilon) : "", r.depth ? std::to_string(*r.depth) : ""});
  }
  if (trace.truncation) {
    const auto& last = trace.records.empty() ? TraceRecord{} : trace.records.back();
    t.rows.push_back({notion, std::to_string(trace.truncation->at_n), "", "truncated",
                      last.epsilon ? format_value(*last.epsilon) : "", last.depth ? std::to_string(*last.depth) : ""});
  }
  return t;
}

EntropyTrace trace_from_table(const CsvTable& table) {
  if (table.header != kTraceHeader) throw InvalidInput("not a trace table: unexpected header");
  EntropyTrace t;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    t.notion = parse_notion(row[0]);
    if (row[3] == "truncated") {
      if (i + 1 != table.rows.size()) throw InvalidInput("truncation marker must be the last trace row");
      t.truncation = Truncation{to_int(row[1], "n"), ""};
      break;
    }
    TraceRecord r;
    r.n = to_int(row[1], "n");
    r.value = to_double(row[2], "value_bits");
    r.method = parse_method(row[3]);
    if (!row[4].empty()) r.epsilon = to_double(row[4], "epsilon");
    if (!row[5].empty()) r.depth = to_int(row[5], "depth");
    t.records.push_back(r);
  }
  return t;
}

}  // namespace coverent
