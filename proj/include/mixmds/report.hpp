#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace mixmds {

using Cell = std::variant<std::int64_t, double, bool, std::string>;

/// Homogeneous records: every row has one cell per column.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

enum class ReportFormat { csv, json };

ReportFormat parse_report_format(std::string_view name);

/// Shortest round-trip decimal form, '.' separator, independent of locale.
std::string format_double(double x);
std::string format_cell(const Cell& cell);

/// Header row plus one line per record, '\n' line endings.
std::string to_csv(const Table& table);
/// Array of objects keyed by column name.
nlohmann::json to_json(const Table& table);
std::string render(const Table& table, ReportFormat format);

/// Writes the rendered table; throws IoFailure.
void emit_report(const Table& table, ReportFormat format, const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

}  // namespace mixmds
