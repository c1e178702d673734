#pragma once

// Minimal CSV table for experiment output. Fields never contain commas,
// quotes or newlines; numbers use the shortest round-trip representation so
// re-reading a file reproduces every value bit for bit.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace gaspace {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;
  const std::string& at(std::size_t row, std::string_view name) const;
  double number(std::size_t row, std::string_view name) const;
  std::int64_t integer(std::size_t row, std::string_view name) const;

  bool operator==(const CsvTable&) const = default;
};

std::string format_number(double v);
std::string format_number(std::int64_t v);
std::string format_number(std::uint64_t v);

double parse_double(std::string_view s);
std::int64_t parse_int(std::string_view s);

std::string to_csv(const CsvTable& table);
CsvTable parse_csv(std::string_view text);

void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace gaspace
