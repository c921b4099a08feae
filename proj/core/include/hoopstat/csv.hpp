#pragma once

// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF tolerated.
// Rows remember their 1-based line number for diagnostics.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hoopstat::io {

struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

struct CsvTable {
  std::string file;  // for messages
  std::vector<std::string> header;
  std::vector<CsvRow> rows;

  /// Column index by header name, or nullopt.
  std::optional<std::size_t> column(std::string_view name) const;
};

/// Parses text; throws LoadError on an unterminated quote or ragged row.
CsvTable parse_csv(std::string_view text, std::string file_label);
/// Reads and parses a file; throws LoadError when it cannot be opened.
CsvTable read_csv(const std::filesystem::path& path);

/// Body of a "# table: NAME" or "# series: NAME" section of a rendered
/// report, up to the next blank or '#' line; nullopt when absent.
std::optional<std::string> report_section(std::string_view text, std::string_view name);

}  // namespace hoopstat::io
