#pragma once

// Comma-separated output with a header row, LF line endings, 17 significant
// digits for doubles and exact decimals for integers. Fields containing a
// comma, quote or newline are quoted with doubled inner quotes.

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace moebius {

std::string format_double(double v);
std::string csv_escape(std::string_view field);

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);

  CsvWriter& operator<<(double v);
  CsvWriter& operator<<(std::int64_t v);
  CsvWriter& operator<<(int v) { return *this << static_cast<std::int64_t>(v); }
  CsvWriter& operator<<(std::size_t v) { return *this << static_cast<std::int64_t>(v); }
  CsvWriter& operator<<(const mpz_class& v);
  CsvWriter& operator<<(const mpq_class& v);
  CsvWriter& operator<<(std::string_view v);
  CsvWriter& operator<<(const char* v) { return *this << std::string_view(v); }

  /// Terminates the current row; throws ContractError on a column-count mismatch.
  void end_row();

 private:
  void separator();

  std::ostream& out_;
  std::size_t columns_;
  std::size_t filled_ = 0;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;
};

/// Parses what CsvWriter emits; every row must match the header width.
CsvTable read_csv(std::istream& in);

double parse_double(std::string_view field);
std::int64_t parse_int(std::string_view field);

}  // namespace moebius
