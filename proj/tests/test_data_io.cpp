#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "levyprem/data_io.hpp"
#include "levyprem/errors.hpp"

using namespace levyprem;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "levyprem_test_data_io";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_file(const std::string& name, const std::string& body) {
  const fs::path p = scratch(name);
  std::ofstream(p) << body;
  return p;
}

std::string error_of(const fs::path& p, const CsvSchema& schema = {}) {
  try {
    load_csv(p, schema);
  } catch (const IoError& e) {
    return e.what();
  }
  return {};
}

std::vector<SeriesRecord> monthly(const std::vector<double>& values, int year = 2000) {
  std::vector<SeriesRecord> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.push_back({Date{year + static_cast<int>(i) / 12, static_cast<int>(i) % 12 + 1, 0}, values[i]});
  }
  return out;
}

std::vector<SeriesRecord> annual(const std::vector<double>& values, int year = 1900) {
  std::vector<SeriesRecord> out;
  for (std::size_t i = 0; i < values.size(); ++i) out.push_back({Date{year + static_cast<int>(i), 1, 0}, values[i]});
  return out;
}

}  // namespace

TEST_CASE("dates") {
  CHECK(parse_date("2019-06") == Date{2019, 6, 0});
  CHECK(parse_date("2019-06-30") == Date{2019, 6, 30});
  CHECK(parse_date("2019-06-30").to_string() == "2019-06-30");
  CHECK(parse_date("2019-06").to_string() == "2019-06");
  CHECK_THROWS_AS(parse_date("2019-13"), InvalidParameter);
  CHECK_THROWS_AS(parse_date("2019-02-30"), InvalidParameter);
  CHECK_THROWS_AS(parse_date("06/30/2019"), InvalidParameter);
  CHECK(parse_date("2020-02-29").day == 29);
  CHECK(parse_period("annual") == Period::annual);
  CHECK(to_string(Period::monthly) == "monthly");
  CHECK_THROWS_AS(parse_period("weekly"), InvalidParameter);
}

TEST_CASE("load_csv") {
  const auto two = load_csv(write_file("two.csv", "date,value\n2019-01,1.5\n2019-02,2.5\n"), {});
  REQUIRE(two.size() == 2);
  CHECK(two[1].date == Date{2019, 2, 0});
  CHECK(two[1].value == 2.5);

  const auto mapped = load_csv(write_file("mapped.csv", "\xEF\xBB\xBFprice,\"month\"\n 10 , 2019-01-31\n11,2019-02-28\n"),
                               CsvSchema{"month", "price"});
  REQUIRE(mapped.size() == 2);
  CHECK(mapped[0].value == 10.0);

  const std::string dup = error_of(write_file("dup.csv", "date,value\n2019-01,1\n2019-02,2\n2019-02,3\n"));
  CHECK(dup.find("duplicate date") != std::string::npos);
  CHECK(dup.find("2019-02") != std::string::npos);
  CHECK(dup.find(":4") != std::string::npos);

  CHECK(error_of(write_file("order.csv", "date,value\n2019-03,1\n2019-02,2\n")).find("non-monotone date") != std::string::npos);
  const std::string bad = error_of(write_file("bad.csv", "date,value\n2019-01,1\n2019-02,abc\n"));
  CHECK(bad.find("parse error") != std::string::npos);
  CHECK(bad.find(":3") != std::string::npos);
  CHECK(error_of(write_file("nan.csv", "date,value\n2019-01,nan\n")).find("parse error") != std::string::npos);
  CHECK(error_of(write_file("cols.csv", "day,value\n2019-01,1\n")).find("date") != std::string::npos);
  CHECK_THROWS_AS(load_csv(scratch("missing.csv"), {}), IoError);
}

TEST_CASE("write then load is bit-exact") {
  const std::vector<SeriesRecord> series = {{Date{2019, 1, 0}, 0.1}, {Date{2019, 2, 0}, 1.0 / 3.0},
                                            {Date{2019, 3, 0}, -2.718281828459045e-300}, {Date{2019, 4, 0}, 6.02214076e23}};
  const fs::path p = scratch("roundtrip.csv");
  write_csv(p, series);
  const auto back = load_csv(p, {});
  REQUIRE(back.size() == series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    CHECK(back[i].date == series[i].date);
    CHECK(back[i].value == series[i].value);
  }
  const std::vector<double> values = {0.1, 1.0 / 7.0, -1e-310};
  write_values(scratch("values.csv"), values);
  CHECK(load_values(scratch("values.csv"), "value") == values);
  CHECK_FALSE(fs::exists(scratch("values.csv.tmp")));
}

TEST_CASE("log growth") {
  for (double g : log_growth(monthly({3.0, 3.0, 3.0, 3.0})).log_growth) CHECK(g == 0.0);
  const GrowthSeries e = log_growth(monthly({1.0, std::exp(1.0)}));
  REQUIRE(e.log_growth.size() == 1);
  CHECK(e.log_growth[0] == Approx(1.0).epsilon(1e-15));
  CHECK(e.dates[0] == Date{2000, 2, 0});
  for (double g : log_growth(monthly({1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048, 4096, 8192})).log_growth) {
    CHECK(g == Approx(std::log(2.0)).epsilon(1e-15));
  }
  CHECK(log_growth(monthly({1, 2, 4})).log_growth.size() == 2);
  CHECK_THROWS_AS(log_growth(monthly({1.0, 0.0})), InvalidParameter);
  CHECK_THROWS_AS(log_growth(monthly({1.0})), InvalidParameter);

  std::vector<SeriesRecord> gap = monthly({1.0, 2.0, 3.0});
  gap[2].date = Date{2000, 5, 0};
  try {
    log_growth(gap);
    FAIL("expected a gap error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("gap") != std::string::npos);
  }
  const auto filled = resample_locf(gap, Period::monthly);
  REQUIRE(filled.size() == 5);
  CHECK(filled[3].value == 2.0);
  CHECK(filled[4].value == 3.0);
  CHECK(log_growth(filled).log_growth.size() == 4);

  const GrowthSeries years = log_growth(annual({1.0, 1.1, 1.21}), Period::annual);
  CHECK(years.period == Period::annual);
  CHECK(years.log_growth[1] == Approx(std::log(1.1)));
}

TEST_CASE("real returns") {
  const auto nominal = annual({1.0, 1.3, 1.1, 1.7});
  const auto flat = annual({2.0, 2.0, 2.0, 2.0});
  const GrowthSeries r = real_return(nominal, flat, Period::annual);
  const GrowthSeries g = log_growth(nominal, Period::annual);
  for (std::size_t i = 0; i < r.log_growth.size(); ++i) CHECK(r.log_growth[i] == Approx(g.log_growth[i]).epsilon(1e-15));
  for (double v : real_return(nominal, nominal, Period::annual).log_growth) CHECK(v == 0.0);

  // 118 synthetic years at 6.81% nominal with no inflation
  std::vector<double> level(119), cpi(119, 100.0);
  for (std::size_t t = 0; t < level.size(); ++t) level[t] = std::pow(1.0681, static_cast<double>(t));
  const GrowthSeries synthetic = real_return(annual(level), annual(cpi), Period::annual);
  REQUIRE(synthetic.log_growth.size() == 118);
  double mean = 0.0;
  for (double v : synthetic.log_growth) mean += v / 118.0;
  CHECK(mean == Approx(std::log(1.0681)).epsilon(1e-12));

  auto shifted = annual({1.0, 1.2, 1.3, 1.4});
  shifted[2].date = Date{1950, 1, 0};
  shifted[3].date = Date{1951, 1, 0};
  try {
    real_return(nominal, shifted, Period::annual);
    FAIL("expected a misalignment error");
  } catch (const Error& e) {
    const std::string what = e.what();
    CHECK(what.find("date misalignment") != std::string::npos);
    CHECK(what.find("1902-01") != std::string::npos);
    CHECK(what.find("1950-01") != std::string::npos);
  }
}

TEST_CASE("yield conversion") {
  CHECK(yield_to_period_log_return(0.06, Period::monthly) == Approx(std::log1p(0.06) / 12.0).epsilon(1e-15));
  CHECK(yield_to_period_log_return(0.06, Period::annual) == Approx(std::log1p(0.06)).epsilon(1e-15));
}
