#pragma once

#include <string>
#include <vector>

namespace nearwell {

/// Shortest exact decimal representation (round-trips bit-for-bit).
std::string format_double(double v);

double parse_double(const std::string& s);

std::vector<std::string> split_ws(const std::string& line);
std::vector<std::string> split_char(const std::string& line, char sep);

/// Minimal delimited-text table. First row is the header.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // throws if absent
};

void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace nearwell
