#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace wxfleet::report {

/// Six significant digits, "C" formatting regardless of the process locale,
/// "NA" for NaN. Negative zero prints as "0".
std::string format_number(double value);

/// Quotes a field when it contains a comma, quote or newline.
std::string csv_escape(std::string_view field);

/// Writes one LF-terminated CSV line.
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

/// In-memory CSV: header plus string cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index for `name`; throws SchemaError naming the column if absent.
  std::size_t column(std::string_view name) const;
};

/// Parses CSV text (RFC 4180 quoting). Every row must have header.size()
/// cells; throws SchemaError naming the line otherwise.
CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::filesystem::path& path);

/// Parses a numeric cell; "NA" maps to NaN. Throws SchemaError with `column`
/// in the message on malformed text.
double parse_number(std::string_view cell, std::string_view column);

/// Writes `contents` to `path`, throwing IoError naming the path on failure.
void write_text_file(const std::filesystem::path& path, std::string_view contents);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace wxfleet::report
