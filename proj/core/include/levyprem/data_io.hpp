#pragma once

// CSV ingestion of dated series and their transformation into log growth
// and log real return series.

#include <compare>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace levyprem {

/// YYYY-MM (day == 0) or YYYY-MM-DD.
struct Date {
  int year = 0;
  int month = 0;
  int day = 0;

  auto operator<=>(const Date&) const = default;
  std::string to_string() const;
  /// Months since year 0.
  int month_index() const { return year * 12 + (month - 1); }
};

/// Throws InvalidParameter on malformed or impossible dates.
Date parse_date(const std::string& text);

struct SeriesRecord {
  Date date;
  double value = 0.0;
};

enum class Period { monthly, annual };
std::string to_string(Period period);
Period parse_period(const std::string& text);

struct GrowthSeries {
  std::vector<double> log_growth;
  Period period = Period::monthly;
  /// Date of the later observation of each increment.
  std::vector<Date> dates;
};

/// Column mapping for load_csv.
struct CsvSchema {
  std::string date_column = "date";
  std::string value_column = "value";
};

/// Header row required. Errors (IoError) carry the offending line number;
/// duplicate and decreasing dates are rejected.
std::vector<SeriesRecord> load_csv(const std::filesystem::path& path, const CsvSchema& schema);

/// Single numeric column, no dates.
std::vector<double> load_values(const std::filesystem::path& path, const std::string& column);

/// Values printed with 17 significant digits so a reload is bit-exact.
void write_csv(const std::filesystem::path& path, std::span<const SeriesRecord> records,
               const CsvSchema& schema = {});
void write_values(const std::filesystem::path& path, std::span<const double> values,
                  const std::string& column = "value");

/// ln(v[t+1] / v[t]). Consecutive dates must be one period apart.
GrowthSeries log_growth(std::span<const SeriesRecord> series, Period period = Period::monthly);

/// Log growth of nominal minus log growth of deflator; dates must match.
GrowthSeries real_return(std::span<const SeriesRecord> nominal,
                         std::span<const SeriesRecord> deflator,
                         Period period = Period::monthly);

/// Fills missing periods by carrying the last observation forward.
/// Daily dates collapse to their month (monthly) or year (annual), the last
/// observation in each period winning.
std::vector<SeriesRecord> resample_locf(std::span<const SeriesRecord> series, Period period);

/// Annualised yield y as a per-period log return: ln(1 + y) / 12 monthly.
double yield_to_period_log_return(double annual_yield, Period period);

}  // namespace levyprem
