#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sqb::csv {

using Row = std::vector<std::string>;

/// A parsed CSV document: a header and the data rows beneath it. Rows keep
/// the 1-based source line on which they started, for diagnostics.
struct Table {
  Row header;
  std::vector<Row> rows;
  std::vector<std::size_t> lines;

  std::optional<std::size_t> column(std::string_view name) const;
  /// Like column() but throws SchemaError naming `context` when absent.
  std::size_t require_column(std::string_view name, std::string_view context) const;
};

/// RFC 4180 parsing: quoted fields may contain commas, doubled quotes and
/// newlines. A UTF-8 byte-order mark on the first line is skipped. Rows whose
/// width differs from the header raise FormatError.
Table parse(std::string_view text, std::string_view context = "csv");
Table read_file(const std::filesystem::path& path);

std::string escape(std::string_view field);
void write_row(std::ostream& out, const Row& row);

/// Shortest decimal form that reads back to the same double. NaN and
/// infinities are written as "nan", "inf" and "-inf".
std::string format_double(double value);
double parse_double(std::string_view text, std::string_view context);
long long parse_int(std::string_view text, std::string_view context);

/// Writes `content` to `path` via a sibling temp file and rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_text(const std::filesystem::path& path);

}  // namespace sqb::csv
