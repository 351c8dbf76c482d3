#include "levyprem/data_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "levyprem/errors.hpp"

namespace levyprem {
namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && (s[a] == ' ' || s[a] == '\t' || s[a] == '\r')) ++a;
  while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r')) --b;
  s = s.substr(a, b - a);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

bool parse_double(const std::string& text, double& out) {
  if (text.empty()) return false;
  const char* first = text.data();
  const char* last = first + text.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int days_in_month(int year, int month) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
  return month == 2 && leap ? 29 : kDays[month - 1];
}

struct CsvTable {
  std::vector<std::string> header;
  // (line number, fields)
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
};

CsvTable read_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    if (table.header.empty()) {
      table.header = split(line);
    } else {
      table.rows.emplace_back(line_no, split(line));
    }
  }
  if (table.header.empty()) throw IoError(path.string() + ": missing header row");
  return table;
}

std::size_t column_index(const CsvTable& table, const std::string& name,
                         const std::filesystem::path& path) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (table.header[i] == name) return i;
  }
  throw IoError(path.string() + ": column '" + name + "' not found in header");
}

const std::string& field(const std::vector<std::string>& row, std::size_t index, std::size_t line,
                         const std::filesystem::path& path) {
  if (index >= row.size()) {
    throw IoError(path.string() + ":" + std::to_string(line) + ": parse error: expected at least " +
                  std::to_string(index + 1) + " fields");
  }
  return row[index];
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    if (!out) throw IoError("write failed for " + path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move output into place at " + path.string() + ": " + ec.message());
}

int step_of(const Date& a, const Date& b, Period period) {
  return period == Period::monthly ? b.month_index() - a.month_index() : b.year - a.year;
}

void check_contiguous(std::span<const SeriesRecord> series, Period period) {
  for (std::size_t i = 1; i < series.size(); ++i) {
    if (step_of(series[i - 1].date, series[i].date, period) != 1) {
      throw InvalidParameter("gap or repeated " + to_string(period) + " period between " +
                             series[i - 1].date.to_string() + " and " +
                             series[i].date.to_string() +
                             " (use the resample option to carry observations forward)");
    }
  }
}

}  // namespace

std::string Date::to_string() const {
  char buf[16];
  if (day == 0) {
    std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
  } else {
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
  }
  return buf;
}

Date parse_date(const std::string& text) {
  const auto bad = [&] { return InvalidParameter("invalid date '" + text + "' (expected YYYY-MM or YYYY-MM-DD)"); };
  if (text.size() != 7 && text.size() != 10) throw bad();
  const auto number = [&](std::size_t pos, std::size_t len) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, v);
    if (ec != std::errc() || ptr != text.data() + pos + len) throw bad();
    return v;
  };
  if (text[4] != '-' || (text.size() == 10 && text[7] != '-')) throw bad();
  Date d{number(0, 4), number(5, 2), text.size() == 10 ? number(8, 2) : 0};
  if (d.month < 1 || d.month > 12) throw bad();
  if (text.size() == 10 && (d.day < 1 || d.day > days_in_month(d.year, d.month))) throw bad();
  return d;
}

std::string to_string(Period period) { return period == Period::monthly ? "monthly" : "annual"; }

Period parse_period(const std::string& text) {
  if (text == "monthly") return Period::monthly;
  if (text == "annual") return Period::annual;
  throw InvalidParameter("period must be 'monthly' or 'annual', got '" + text + "'");
}

std::vector<SeriesRecord> load_csv(const std::filesystem::path& path, const CsvSchema& schema) {
  const CsvTable table = read_table(path);
  const std::size_t date_col = column_index(table, schema.date_column, path);
  const std::size_t value_col = column_index(table, schema.value_column, path);
  std::vector<SeriesRecord> records;
  records.reserve(table.rows.size());
  for (const auto& [line, row] : table.rows) {
    const std::string where = path.string() + ":" + std::to_string(line) + ": ";
    SeriesRecord r;
    try {
      r.date = parse_date(field(row, date_col, line, path));
    } catch (const InvalidParameter& e) {
      throw IoError(where + "parse error: " + e.what());
    }
    const std::string& value_text = field(row, value_col, line, path);
    if (!parse_double(value_text, r.value)) {
      throw IoError(where + "parse error: value '" + value_text + "' is not a finite number");
    }
    if (!records.empty()) {
      if (r.date == records.back().date) throw IoError(where + "duplicate date " + r.date.to_string());
      if (r.date < records.back().date) {
        throw IoError(where + "non-monotone date " + r.date.to_string() + " after " +
                      records.back().date.to_string());
      }
    }
    records.push_back(r);
  }
  return records;
}

std::vector<double> load_values(const std::filesystem::path& path, const std::string& column) {
  const CsvTable table = read_table(path);
  const std::size_t col = column_index(table, column, path);
  std::vector<double> values;
  values.reserve(table.rows.size());
  for (const auto& [line, row] : table.rows) {
    double v = 0.0;
    const std::string& text = field(row, col, line, path);
    if (!parse_double(text, v)) {
      throw IoError(path.string() + ":" + std::to_string(line) + ": parse error: value '" + text +
                    "' is not a finite number");
    }
    values.push_back(v);
  }
  return values;
}

void write_csv(const std::filesystem::path& path, std::span<const SeriesRecord> records,
               const CsvSchema& schema) {
  std::string out = schema.date_column + "," + schema.value_column + "\n";
  for (const auto& r : records) out += r.date.to_string() + "," + format_double(r.value) + "\n";
  write_atomically(path, out);
}

void write_values(const std::filesystem::path& path, std::span<const double> values,
                  const std::string& column) {
  std::string out = column + "\n";
  for (double v : values) out += format_double(v) + "\n";
  write_atomically(path, out);
}

GrowthSeries log_growth(std::span<const SeriesRecord> series, Period period) {
  if (series.size() < 2) throw InvalidParameter("log_growth: need at least 2 observations");
  for (const auto& r : series) {
    if (!(r.value > 0.0)) {
      throw InvalidParameter("log_growth: nonpositive value " + format_double(r.value) + " at " +
                             r.date.to_string());
    }
  }
  check_contiguous(series, period);
  GrowthSeries g;
  g.period = period;
  for (std::size_t i = 1; i < series.size(); ++i) {
    g.log_growth.push_back(std::log(series[i].value / series[i - 1].value));
    g.dates.push_back(series[i].date);
  }
  return g;
}

GrowthSeries real_return(std::span<const SeriesRecord> nominal,
                         std::span<const SeriesRecord> deflator, Period period) {
  std::map<Date, int> seen;
  for (const auto& r : nominal) seen[r.date] |= 1;
  for (const auto& r : deflator) seen[r.date] |= 2;
  std::string unmatched;
  for (const auto& [date, mask] : seen) {
    if (mask != 3) {
      unmatched += (unmatched.empty() ? "" : ", ") + date.to_string() +
                   (mask == 1 ? " (nominal only)" : " (deflator only)");
    }
  }
  if (!unmatched.empty()) throw InvalidParameter("real_return: date misalignment: " + unmatched);
  GrowthSeries n = log_growth(nominal, period);
  const GrowthSeries d = log_growth(deflator, period);
  for (std::size_t i = 0; i < n.log_growth.size(); ++i) n.log_growth[i] -= d.log_growth[i];
  return n;
}

std::vector<SeriesRecord> resample_locf(std::span<const SeriesRecord> series, Period period) {
  std::vector<SeriesRecord> out;
  for (const auto& r : series) {
    SeriesRecord bucket{{r.date.year, period == Period::monthly ? r.date.month : 1, 0}, r.value};
    if (!out.empty() && out.back().date == bucket.date) {
      out.back().value = r.value;
      continue;
    }
    while (!out.empty() && step_of(out.back().date, bucket.date, period) > 1) {
      SeriesRecord fill = out.back();
      if (period == Period::monthly) {
        const int next = fill.date.month_index() + 1;
        fill.date = {next / 12, next % 12 + 1, 0};
      } else {
        ++fill.date.year;
      }
      out.push_back(fill);
    }
    out.push_back(bucket);
  }
  return out;
}

double yield_to_period_log_return(double annual_yield, Period period) {
  if (!(annual_yield > -1.0)) throw InvalidParameter("annual yield must exceed -1");
  const double annual = std::log1p(annual_yield);
  return period == Period::monthly ? annual / 12.0 : annual;
}

}  // namespace levyprem
