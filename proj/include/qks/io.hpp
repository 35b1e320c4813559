#pragma once

// Grid mini-language and the json / csv / pretty writers shared by the CLI
// and the verification reports.

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qks {

/// "v" (a single point) or "lo:hi:n" (n evenly spaced points, both ends
/// included).
struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  int n = 1;
};

GridSpec parse_grid(const std::string& text);
std::vector<double> linspace(const GridSpec& g);

/// printf("%.{digits}g"); non-finite values print as inf / -inf / nan.
std::string format_double(double v, int digits = 17);

using Field = std::variant<std::monostate, bool, long long, double, std::string>;

struct Record {
  std::vector<std::pair<std::string, Field>> fields;

  Record& add(std::string key, Field value) {
    fields.emplace_back(std::move(key), std::move(value));
    return *this;
  }
};

/// One JSON object, keys in insertion order, doubles with 17 significant
/// digits.  Non-finite doubles become null.
std::string to_json_line(const Record& r);

std::string csv_escape(const std::string& cell);

enum class OutputFormat { Json, Csv, Pretty };
OutputFormat parse_output_format(const std::string& name);

/// Header row from the first record's keys.
void write_csv(std::ostream& os, const std::vector<Record>& rows);
void write_json_lines(std::ostream& os, const std::vector<Record>& rows);
/// Aligned text table with `precision` significant digits.
void write_pretty(std::ostream& os, const std::vector<Record>& rows,
                  int precision);
void write_records(std::ostream& os, const std::vector<Record>& rows,
                   OutputFormat format, int precision);

/// RFC-4180 reader (quoted fields, doubled quotes, embedded newlines).
std::vector<std::vector<std::string>> parse_csv(std::istream& is);

}  // namespace qks
