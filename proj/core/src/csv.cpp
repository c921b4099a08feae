#include <fstream>
#include <sstream>

#include "hoopstat/errors.hpp"
#include "hoopstat/csv.hpp"

namespace hoopstat::io {

std::optional<std::size_t> CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return std::nullopt;
}

CsvTable parse_csv(std::string_view text, std::string file_label) {
  CsvTable table;
  table.file = std::move(file_label);
  // Skip a UTF-8 byte order mark.
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  bool row_has_content = false;
  std::size_t line = 1;
  std::size_t row_line = 1;

  auto finish_row = [&] {
    fields.push_back(std::move(field));
    field.clear();
    if (row_has_content || fields.size() > 1 || !fields.front().empty()) {
      if (table.header.empty() && table.rows.empty()) {
        table.header = std::move(fields);
      } else {
        if (fields.size() != table.header.size()) {
          throw LoadError(table.file, row_line,
                          "expected " + std::to_string(table.header.size()) + " fields, found " +
                              std::to_string(fields.size()));
        }
        table.rows.push_back({row_line, std::move(fields)});
      }
    }
    fields.clear();
    row_has_content = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        row_has_content = true;
        break;
      case ',':
        fields.push_back(std::move(field));
        field.clear();
        row_has_content = true;
        break;
      case '\r':
        break;
      case '\n':
        finish_row();
        ++line;
        row_line = line;
        break;
      default:
        field.push_back(c);
    }
  }
  if (in_quotes) throw LoadError(table.file, row_line, "unterminated quoted field");
  if (!field.empty() || !fields.empty() || row_has_content) finish_row();
  if (table.header.empty()) throw LoadError(table.file, 1, "missing header row");
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(path.string(), 0, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str(), path.filename().string());
}

std::optional<std::string> report_section(std::string_view text, std::string_view name) {
  std::optional<std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = end + 1;
    if (out) {
      if (line.empty() || line.front() == '#') break;
      *out += line;
      *out += '\n';
    } else if (line == "# table: " + std::string(name) || line == "# series: " + std::string(name)) {
      out.emplace();
    }
  }
  return out;
}

}  // namespace hoopstat::io
