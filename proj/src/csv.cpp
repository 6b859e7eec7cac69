#include "moebius/csv.hpp"

#include <charconv>
#include <cmath>

#include "moebius/errors.hpp"

namespace moebius {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return {buf, res.ptr};
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
  if (header.empty()) throw ContractError("CSV header must not be empty");
  for (const auto& name : header) *this << std::string_view(name);
  end_row();
}

void CsvWriter::separator() {
  if (filled_ == columns_) throw ContractError("CSV row has more fields than the header");
  if (filled_ > 0) out_ << ',';
  ++filled_;
}

CsvWriter& CsvWriter::operator<<(double v) {
  separator();
  out_ << format_double(v);
  return *this;
}

CsvWriter& CsvWriter::operator<<(std::int64_t v) {
  separator();
  out_ << v;
  return *this;
}

CsvWriter& CsvWriter::operator<<(const mpz_class& v) {
  separator();
  out_ << v.get_str();
  return *this;
}

CsvWriter& CsvWriter::operator<<(const mpq_class& v) {
  separator();
  out_ << v.get_str();
  return *this;
}

CsvWriter& CsvWriter::operator<<(std::string_view v) {
  separator();
  out_ << csv_escape(v);
  return *this;
}

void CsvWriter::end_row() {
  if (filled_ != columns_) {
    throw ContractError("CSV row has " + std::to_string(filled_) + " fields, header has " + std::to_string(columns_));
  }
  out_ << '\n';
  filled_ = 0;
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw FormatError("CSV has no column '" + std::string(name) + "'");
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any = false;
  char c;
  auto finish_record = [&] {
    record.push_back(std::move(field));
    field.clear();
    if (table.header.empty()) {
      table.header = std::move(record);
    } else {
      if (record.size() != table.header.size()) {
        throw FormatError("CSV row " + std::to_string(table.rows.size() + 1) + " has " +
                          std::to_string(record.size()) + " fields, header has " +
                          std::to_string(table.header.size()));
      }
      table.rows.push_back(std::move(record));
    }
    record.clear();
    any = false;
  };
  while (in.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n') {
      finish_record();
    } else if (c == '\r') {
      throw FormatError("CSV must use LF line endings");
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw FormatError("CSV ends inside a quoted field");
  if (any) finish_record();
  if (table.header.empty()) throw FormatError("CSV is empty");
  return table;
}

double parse_double(std::string_view field) {
  if (field == "nan") return std::nan("");
  if (field == "inf") return HUGE_VAL;
  if (field == "-inf") return -HUGE_VAL;
  double v = 0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw FormatError("not a number: '" + std::string(field) + "'");
  }
  return v;
}

std::int64_t parse_int(std::string_view field) {
  std::int64_t v = 0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw FormatError("not an integer: '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace moebius
