#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace tli::app {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Index of a named column; throws std::out_of_range if absent.
  std::size_t column_index(const std::string& name) const;
  std::vector<double> column(const std::string& name) const;
};

/// %.17g, so that parsing the text returns the identical double.
std::string format_number(double v);

/// Header row then one line per row, comma separated, LF line endings.
std::string to_csv(const Table& table);

/// Strict parser for files produced by to_csv. Throws std::runtime_error
/// with the line number on malformed input.
Table parse_csv(const std::string& text);
Table read_csv(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
void write_csv(const std::filesystem::path& path, const Table& table);

}  // namespace tli::app
