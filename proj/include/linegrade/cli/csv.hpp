#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "linegrade/errors.hpp"

namespace linegrade::cli {

class CsvError : public Error {
 public:
  CsvError(std::size_t row, const std::string& message)
      : Error("row " + std::to_string(row) + ": " + message), row_(row) {}
  std::size_t row() const noexcept { return row_; }
  const char* kind() const noexcept override { return "CsvError"; }

 private:
  std::size_t row_;
};

/// RFC 4180 records: comma separated, optional double quotes, `""` inside
/// quotes for a literal quote, quoted fields may span lines. Rows are
/// numbered from 1; blank lines are skipped.
struct CsvRow {
  std::size_t number = 0;
  std::vector<std::string> fields;
};

std::vector<CsvRow> parse_csv(std::string_view text);

std::string csv_escape(std::string_view field);

}  // namespace linegrade::cli
