#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "levyprem/data_io.hpp"
#include "levyprem/estimation.hpp"
#include "levyprem_cli/commands.hpp"

using namespace levyprem;
using namespace levyprem::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "levyprem_test_cli" / name;
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

json read_json(const fs::path& p) { return json::parse(slurp(p)); }

// Simulated draws through the CLI; returns the CSV path.
fs::path simulate(const std::string& name, const std::string& model, const std::string& params,
                  std::size_t n, int seed) {
  const fs::path dir = fresh_dir(name);
  const Run r = run({"simulate", "--model", model, "--params", params, "--n", std::to_string(n),
                     "--seed", std::to_string(seed), "--out", dir.string()});
  REQUIRE(r.code == 0);
  return dir / ("simulate_" + model + ".csv");
}

}  // namespace

TEST_CASE("paper target premium") {
  CHECK(paper_target_premium() == doctest::Approx(std::log(1.0681 / 1.00987)).epsilon(1e-15));
}

TEST_CASE("simulate") {
  const fs::path empty = simulate("sim_empty", "normal", "table1-normal", 0, 1);
  CHECK(slurp(empty) == "value\n");

  const fs::path a = simulate("sim_a", "nig", "table1", 500, 7);
  const fs::path b = simulate("sim_b", "nig", "table1", 500, 7);
  CHECK(slurp(a) == slurp(b));
  CHECK(load_values(a, "value").size() == 500);

  const fs::path heavy = simulate("sim_ncig", "ncig", "table2", 1'000'000, 3);
  CHECK(sample_moments(load_values(heavy, "value")).excess_kurtosis > 0.0);

  const Run no_seed = run({"simulate", "--model", "nig", "--params", "table1", "--out", fresh_dir("sim_noseed").string()});
  CHECK(no_seed.code == kExitConfig);
  CHECK_FALSE(fs::exists(fresh_dir("sim_noseed")));
}

TEST_CASE("fit") {
  const fs::path data = simulate("fit_data", "normal", "table1-normal", 10000, 11);
  const fs::path dir = fresh_dir("fit_out");
  const Run normal = run({"fit", "--model", "normal", "--input", data.string(), "--out", dir.string()});
  REQUIRE(normal.code == 0);
  const json nf = read_json(dir / "fit_normal.json");
  const double se_mu = 0.01287 / std::sqrt(10000.0);
  CHECK(std::abs(nf["params"]["mu"].get<double>() - 0.00145) <= 3 * se_mu);
  CHECK(std::abs(nf["params"]["sigma"].get<double>() - 0.01287) <= 3 * 0.01287 / std::sqrt(20000.0));
  CHECK(nf["environment"]["version"].is_string());

  const Run nig = run({"fit", "--model", "nig", "--input", data.string(), "--out", dir.string()});
  CHECK((nig.code == 0 || nig.code == kExitConvergence));
  const json gf = read_json(dir / "fit_nig.json");
  CHECK(gf["log_likelihood"].get<double>() >= nf["log_likelihood"].get<double>() - 1e-6);

  const std::string first = slurp(dir / "fit_normal.json");
  REQUIRE(run({"fit", "--model", "normal", "--input", data.string(), "--out", dir.string()}).code == 0);
  CHECK(slurp(dir / "fit_normal.json") == first);
}

TEST_CASE("error exit codes leave no output") {
  const fs::path dir = fresh_dir("errors");
  const Run missing = run({"fit", "--model", "nig", "--input", "/nonexistent/data.csv", "--out", dir.string()});
  CHECK(missing.code == kExitIo);
  CHECK(missing.err.find("input file not found") != std::string::npos);
  CHECK_FALSE(fs::exists(dir));

  CHECK(run({}).code == kExitConfig);
  CHECK(run({"fit", "--model", "student", "--input", "/nonexistent/data.csv"}).code == kExitIo);
  CHECK(run({"calibrate", "--model", "nig", "--params", "table1", "--out", dir.string()}).code == kExitConfig);

  const Run unattainable = run({"calibrate", "--model", "nig", "--params", "table1", "--target-premium", "5",
                                "--out", dir.string()});
  CHECK(unattainable.code == kExitFeasibility);
  CHECK(unattainable.err.find("target premium unattainable") != std::string::npos);
  CHECK(unattainable.err.find("maximum feasible premium") != std::string::npos);
  CHECK_FALSE(fs::exists(dir));

  CHECK(exit_code_for(ErrorFamily::convergence) == kExitConvergence);
  CHECK(exit_code_for(ErrorFamily::numerical) == kExitNumerical);
}

TEST_CASE("config files") {
  const fs::path dir = fresh_dir("config");
  fs::create_directories(dir.parent_path());
  const fs::path cfg = dir.parent_path() / "config.json";
  std::ofstream(cfg) << R"({"model": "normal", "params": {"mu": 0.0, "sigma": 1.0}, "n": 5, "seed": 1, "out": ")"
                     << dir.string() << "\"}";
  REQUIRE(run({"simulate", "--config", cfg.string()}).code == 0);
  CHECK(load_values(dir / "simulate_normal.csv", "value").size() == 5);
  REQUIRE(run({"simulate", "--config", cfg.string(), "--n", "3"}).code == 0);
  CHECK(load_values(dir / "simulate_normal.csv", "value").size() == 3);

  std::ofstream(cfg) << R"({"modle": "normal"})";
  CHECK(run({"simulate", "--config", cfg.string()}).code == kExitConfig);
}

TEST_CASE("calibrate") {
  const fs::path dir = fresh_dir("calibrate");
  const double sigma = std::sqrt(0.001);
  std::ostringstream params_text;
  params_text.precision(17);
  params_text << "{\"mu\": 0.0, \"sigma\": " << sigma << "}";
  const std::string params = params_text.str();
  const Run fwd = run({"calibrate", "--model", "normal", "--params", params, "--target-premium", "0.05",
                       "--a", "10", "--out", dir.string()});
  REQUIRE(fwd.code == 0);
  const json f = read_json(dir / "calibrate_normal.json");
  CHECK(f["forward"][0]["log_premium_period"].get<double>() == doctest::Approx(10 * sigma * sigma).epsilon(1e-14));

  const Run table2 = run({"calibrate", "--model", "ncig", "--params", "table2", "--target-premium",
                          std::to_string(paper_target_premium()), "--a", "8.9626", "--out", dir.string()});
  REQUIRE(table2.code == 0);
  CHECK(table2.out.find("paper reports 8.9626") != std::string::npos);
  CHECK(table2.out.find("divided by 12") != std::string::npos);
  const json c = read_json(dir / "calibrate_ncig.json");
  CHECK(c["paper_crra"].get<double>() == 8.9626);
  CHECK(c["feasible_crra_interval"][1].get<double>() == doctest::Approx(28.803).epsilon(1e-4));

  // forward premium fed back as the target recovers a
  const Run forward = run({"calibrate", "--model", "nig", "--params", "table1", "--target-premium", "0.01",
                           "--a", "17.25", "--out", dir.string()});
  REQUIRE(forward.code == 0);
  const double annual = read_json(dir / "calibrate_nig.json")["forward"][0]["log_premium_annualized"].get<double>();
  std::ostringstream target;
  target.precision(17);
  target << annual;
  REQUIRE(run({"calibrate", "--model", "nig", "--params", "table1", "--target-premium", target.str(),
               "--out", dir.string()}).code == 0);
  CHECK(std::abs(read_json(dir / "calibrate_nig.json")["crra"].get<double>() - 17.25) < 1e-8);
}

TEST_CASE("validate") {
  const fs::path data = simulate("validate_data", "nig", "table1", 2000, 5);
  const fs::path dir = fresh_dir("validate");
  const Run own = run({"validate", "--model", "nig", "--params", "table1", "--input", data.string(), "--out", dir.string()});
  REQUIRE(own.code == 0);
  const json report = read_json(dir / "validate_nig_tests.json");
  REQUIRE(report["tests"].size() == 3);
  for (const auto& t : report["tests"]) CHECK(t["p_value"].get<double>() > 0.01);
  std::size_t total = 0;
  for (const auto& c : report["histogram"]) total += c.get<std::size_t>();
  CHECK(total == 2000);
  for (const char* f : {"validate_nig_qq.csv", "validate_nig_pp.csv", "validate_nig_qq.svg", "validate_nig_pp.svg",
                        "validate_nig_pit_histogram.csv", "validate_nig_pit_histogram.svg"}) {
    CHECK(fs::exists(dir / f));
  }

  const fs::path heavy = simulate("validate_heavy", "nig", "table1", 5000, 6);
  const fs::path fits = fresh_dir("validate_fits");
  REQUIRE(run({"fit", "--model", "normal", "--input", heavy.string(), "--out", fits.string()}).code == 0);
  const Run nig_fit = run({"fit", "--model", "nig", "--input", heavy.string(), "--out", fits.string()});
  REQUIRE((nig_fit.code == 0 || nig_fit.code == kExitConvergence));
  const fs::path vdir = fresh_dir("validate_compare");
  REQUIRE(run({"validate", "--fit", (fits / "fit_normal.json").string(), "--input", heavy.string(), "--out", vdir.string()}).code == 0);
  REQUIRE(run({"validate", "--fit", (fits / "fit_nig.json").string(), "--input", heavy.string(), "--out", vdir.string()}).code == 0);
  const double ks_normal = read_json(vdir / "validate_normal_tests.json")["tests"][0]["p_value"].get<double>();
  const double ks_nig = read_json(vdir / "validate_nig_tests.json")["tests"][0]["p_value"].get<double>();
  CHECK(ks_normal < ks_nig);
}
