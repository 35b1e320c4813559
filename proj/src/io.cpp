#include "qks/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "qks/errors.hpp"

namespace qks {

namespace {

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParamError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ParamError("not a number: '" + s + "'");
  return v;
}

std::string field_text(const Field& f, int digits) {
  return std::visit(
      [&](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<V, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<V, long long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<V, double>) {
          return format_double(v, digits);
        } else {
          return v;
        }
      },
      f);
}

}  // namespace

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) {
    g.lo = g.hi = parse_number(text);
    g.n = 1;
    return g;
  }
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos) {
    throw ParamError("grid must be 'v' or 'lo:hi:n', got '" + text + "'");
  }
  g.lo = parse_number(text.substr(0, c1));
  g.hi = parse_number(text.substr(c1 + 1, c2 - c1 - 1));
  const double n = parse_number(text.substr(c2 + 1));
  if (!(n >= 1.0) || n != std::floor(n) || n > 1e7) {
    throw ParamError("grid point count must be a positive integer");
  }
  g.n = static_cast<int>(n);
  if (g.n == 1 && g.lo != g.hi) {
    throw ParamError("a one-point grid needs lo == hi");
  }
  return g;
}

std::vector<double> linspace(const GridSpec& g) {
  std::vector<double> out(g.n);
  if (g.n == 1) {
    out[0] = g.lo;
    return out;
  }
  for (int i = 0; i < g.n; ++i) {
    out[i] = i == g.n - 1 ? g.hi : g.lo + (g.hi - g.lo) * i / (g.n - 1);
  }
  return out;
}

std::string format_double(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string to_json_line(const Record& r) {
  std::string out = "{";
  bool first = true;
  for (const auto& [key, value] : r.fields) {
    if (!first) out += ',';
    first = false;
    out += nlohmann::json(key).dump();
    out += ':';
    std::visit(
        [&](const auto& v) {
          using V = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<V, std::monostate>) {
            out += "null";
          } else if constexpr (std::is_same_v<V, bool>) {
            out += v ? "true" : "false";
          } else if constexpr (std::is_same_v<V, long long>) {
            out += std::to_string(v);
          } else if constexpr (std::is_same_v<V, double>) {
            out += std::isfinite(v) ? format_double(v, 17) : "null";
          } else {
            out += nlohmann::json(v).dump();
          }
        },
        value);
  }
  out += '}';
  return out;
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

OutputFormat parse_output_format(const std::string& name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "pretty") return OutputFormat::Pretty;
  throw ParamError("unknown output format '" + name + "'");
}

void write_csv(std::ostream& os, const std::vector<Record>& rows) {
  if (rows.empty()) return;
  bool first = true;
  for (const auto& [key, value] : rows.front().fields) {
    if (!first) os << ',';
    first = false;
    os << csv_escape(key);
  }
  os << "\r\n";
  for (const Record& r : rows) {
    first = true;
    for (const auto& [key, value] : r.fields) {
      if (!first) os << ',';
      first = false;
      os << csv_escape(field_text(value, 17));
    }
    os << "\r\n";
  }
}

void write_json_lines(std::ostream& os, const std::vector<Record>& rows) {
  for (const Record& r : rows) os << to_json_line(r) << '\n';
}

void write_pretty(std::ostream& os, const std::vector<Record>& rows,
                  int precision) {
  if (rows.empty()) return;
  const std::size_t ncol = rows.front().fields.size();
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header;
  for (const auto& [key, value] : rows.front().fields) header.push_back(key);
  cells.push_back(header);
  for (const Record& r : rows) {
    std::vector<std::string> line;
    for (const auto& [key, value] : r.fields) {
      line.push_back(field_text(value, precision));
    }
    cells.push_back(line);
  }
  std::vector<std::size_t> width(ncol, 0);
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size() && i < ncol; ++i) {
      width[i] = std::max(width[i], line[i].size());
    }
  }
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) os << "  ";
      os << line[i];
      if (i + 1 < line.size() && i < ncol) {
        os << std::string(width[i] - line[i].size(), ' ');
      }
    }
    os << '\n';
  }
}

void write_records(std::ostream& os, const std::vector<Record>& rows,
                   OutputFormat format, int precision) {
  switch (format) {
    case OutputFormat::Json: write_json_lines(os, rows); break;
    case OutputFormat::Csv: write_csv(os, rows); break;
    case OutputFormat::Pretty: write_pretty(os, rows, precision); break;
  }
}

std::vector<std::vector<std::string>> parse_csv(std::istream& is) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false;
  bool any = false;
  char c;
  while (is.get(c)) {
    any = true;
    if (quoted) {
      if (c == '"') {
        if (is.peek() == '"') {
          is.get(c);
          cell += '"';
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(cell));
      cell.clear();
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && is.peek() == '\n') is.get(c);
      row.push_back(std::move(cell));
      cell.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else {
      cell += c;
    }
  }
  if (quoted) throw ParamError("unterminated quoted CSV field");
  if (any) {
    row.push_back(std::move(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace qks
