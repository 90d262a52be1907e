#include "linegrade/cli/csv.hpp"

namespace linegrade::cli {

std::vector<CsvRow> parse_csv(std::string_view text) {
  std::vector<CsvRow> rows;
  std::size_t i = 0, row_no = 0;
  while (i < text.size()) {
    ++row_no;
    CsvRow row{row_no, {}};
    std::string field;
    bool quoted = false, after_quote = false, line_empty = true;
    for (;;) {
      if (i >= text.size()) {
        if (quoted) throw CsvError(row_no, "unterminated quoted field");
        break;
      }
      const char c = text[i++];
      if (quoted) {
        if (c == '"') {
          if (i < text.size() && text[i] == '"') {
            field.push_back('"');
            ++i;
          } else {
            quoted = false;
            after_quote = true;
          }
        } else {
          field.push_back(c);
        }
        continue;
      }
      if (c == '\n' || c == '\r') {
        if (c == '\r' && i < text.size() && text[i] == '\n') ++i;
        break;
      }
      line_empty = false;
      if (c == ',') {
        row.fields.push_back(std::move(field));
        field.clear();
        after_quote = false;
      } else if (c == '"') {
        if (!field.empty() || after_quote) throw CsvError(row_no, "stray quote inside field");
        quoted = true;
      } else {
        if (after_quote) throw CsvError(row_no, "text after closing quote");
        field.push_back(c);
      }
    }
    if (line_empty && row.fields.empty() && field.empty() && !after_quote) continue;
    row.fields.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos && !field.empty() &&
      field.front() != ' ' && field.back() != ' ')
    return std::string(field);
  if (field.empty()) return "";
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace linegrade::cli
