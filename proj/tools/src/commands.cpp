#include "levyprem_cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

#include <CLI11.hpp>

#include "levyprem/gof.hpp"
#include "levyprem/premium.hpp"
#include "levyprem_cli/svg.hpp"

namespace levyprem::cli {
namespace {

using json = nlohmann::json;

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string general(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

const char* objective_kind_name(ObjectiveKind k) {
  return k == ObjectiveKind::log_likelihood ? "log_likelihood" : "ecf_distance";
}

json environment(const RunConfig& c) {
  json env = {{"version", LEVYPREM_VERSION}};
  env["seed"] = c.seed ? json(*c.seed) : json(nullptr);
  return env;
}

json fit_to_json(const FitResult& f) {
  return {{"model", model_name(f.params)},
          {"params", params_to_json(f.params)},
          {"objective", f.objective},
          {"objective_kind", objective_kind_name(f.objective_kind)},
          {"converged", f.converged},
          {"iterations", f.iterations},
          {"init", params_to_json(f.init)},
          {"log_likelihood", f.log_likelihood},
          {"below_nig_baseline", f.below_nig_baseline},
          {"note", f.note}};
}

double period_scale(Period p) { return p == Period::monthly ? 12.0 : 1.0; }

ModelParams resolve_params(const RunConfig& c) {
  if (c.fit) {
    std::ifstream in(*c.fit);
    if (!in) throw IoError("cannot open fit result " + c.fit->string());
    json j;
    try {
      in >> j;
      return params_from_json(j.at("model").get<std::string>(), j.at("params"));
    } catch (const json::exception& e) {
      throw IoError("malformed fit result " + c.fit->string() + ": " + e.what());
    }
  }
  if (!c.params) throw InvalidParameter("model parameters required (--fit or --params)");
  if (c.model.empty() && !c.params->is_string()) throw InvalidParameter("--model is required");
  return params_from_json(c.model, *c.params);
}

std::string csv_pairs(const std::string& header, const std::vector<std::array<double, 2>>& rows) {
  std::string s = header + "\n";
  for (const auto& r : rows) s += g17(r[0]) + "," + g17(r[1]) + "\n";
  return s;
}

struct FitBundle {
  FitResult result;
  json record;
};

FitBundle fit_model(const std::string& model, std::span<const double> data, int starts) {
  if (model == "normal") {
    FitResult f = fit_normal_mle(data);
    return {f, fit_to_json(f)};
  }
  if (model == "nig") {
    FitResult f = fit_nig_mle(data);
    return {f, fit_to_json(f)};
  }
  if (model == "ncig") {
    const FitResult nig = fit_nig_mle(data);
    const EcfObjectiveConfig config = EcfObjectiveConfig::for_data(data);
    const NcigSelection sel = fit_ncig_multistart(data, config, nig.log_likelihood, starts);
    FitResult best = sel.starts[sel.best];
    json record = fit_to_json(best);
    json start_lls = json::array();
    for (const auto& s : sel.starts) start_lls.push_back(s.log_likelihood);
    record["selection"] = {{"nig_log_likelihood", sel.nig_log_likelihood},
                           {"accepted", sel.accepted},
                           {"best_start", sel.best},
                           {"start_log_likelihoods", start_lls}};
    return {best, record};
  }
  throw InvalidParameter("model must be one of normal, nig, ncig (got '" + model + "')");
}

struct GofBundle {
  std::vector<TestReport> reports;
  PitSample pit_sample;
  PlotData plot;
};

GofBundle run_gof(const ModelParams& params, std::span<const double> data) {
  const ModelDistribution dist = model_distribution(params, data);
  PitSample s = pit(data, dist.cdf);
  std::vector<TestReport> reports = {ks_test_uniform(s), neyman_smooth_test(s, 4), frosini_test(s)};
  return {reports, std::move(s), qq_pp_data(data, dist.cdf, dist.quantile)};
}

std::vector<double> simulate(const ModelParams& p, std::size_t n, std::uint64_t seed) {
  return std::visit(
      [&](const auto& q) -> std::vector<double> {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, NormalParams>) {
          return normal_sample(q, n, seed);
        } else if constexpr (std::is_same_v<T, NigParams>) {
          return nig_sample(q, n, seed);
        } else {
          return ncig_sample(q, n, seed);
        }
      },
      p);
}

// Calibrated CRRA or the reason it does not exist.
struct CrraOutcome {
  std::optional<double> a;
  std::string message;

  std::string cell() const { return a ? fixed(*a, 4) : "unattainable"; }
  json to_json() const { return a ? json(*a) : json({{"error", message}}); }
};

CrraOutcome try_calibrate(double target, double b, const ModelParams& p) {
  try {
    return {calibrate_crra(target, b, p), {}};
  } catch (const FeasibilityError& e) {
    return {std::nullopt, e.what()};
  }
}

}  // namespace

int exit_code_for(ErrorFamily family) {
  switch (family) {
    case ErrorFamily::config: return kExitConfig;
    case ErrorFamily::io: return kExitIo;
    case ErrorFamily::feasibility: return kExitFeasibility;
    case ErrorFamily::convergence: return kExitConvergence;
    case ErrorFamily::numerical: return kExitNumerical;
  }
  return kExitUnknown;
}

void OutputSet::add(const std::string& name, std::string content) {
  files_[name] = std::move(content);
}

void OutputSet::commit(const std::filesystem::path& dir) const {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> staged;
  const auto cleanup = [&] {
    for (const auto& p : staged) std::filesystem::remove(p, ec);
  };
  for (const auto& [name, content] : files_) {
    std::filesystem::path tmp = dir / (name + ".partial");
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    staged.push_back(tmp);
    if (!(out << content) || !(out.flush())) {
      cleanup();
      throw IoError("cannot write " + (dir / name).string());
    }
  }
  for (const auto& [name, content] : files_) {
    std::filesystem::rename(dir / (name + ".partial"), dir / name, ec);
    if (ec) {
      cleanup();
      throw IoError("cannot move " + name + " into " + dir.string() + ": " + ec.message());
    }
  }
}

double paper_target_premium() { return std::log(1.0681) - std::log(1.00987); }

std::vector<double> load_input(const RunConfig& c) {
  if (!c.input) throw InvalidParameter("--input is required");
  if (!std::filesystem::exists(*c.input)) throw IoError("input file not found: " + c.input->string());
  const std::size_t colon = c.schema.find(':');
  if (colon == std::string::npos) {
    if (c.transform != "none") {
      throw InvalidParameter("transform '" + c.transform + "' needs a dated schema (date:value)");
    }
    return load_values(*c.input, c.schema);
  }
  std::vector<SeriesRecord> records =
      load_csv(*c.input, CsvSchema{c.schema.substr(0, colon), c.schema.substr(colon + 1)});
  if (c.resample) records = resample_locf(records, c.period);
  if (c.transform == "log_growth") return log_growth(records, c.period).log_growth;
  if (c.transform != "none") throw InvalidParameter("transform must be none or log_growth");
  std::vector<double> values;
  values.reserve(records.size());
  for (const auto& r : records) values.push_back(r.value);
  return values;
}

CommandOutput cmd_fit(const RunConfig& c) {
  if (c.model.empty()) throw InvalidParameter("--model is required for fit");
  const std::vector<double> data = load_input(c);
  FitBundle fit = fit_model(c.model, data, c.starts);
  fit.record["n"] = data.size();
  fit.record["environment"] = environment(c);

  CommandOutput out;
  out.summary = fit.record;
  out.files.add("fit_" + c.model + ".json", fit.record.dump(2) + "\n");
  std::ostringstream text;
  text << "model " << c.model << " (n = " << data.size() << ")\n";
  for (const auto& [k, v] : fit.record["params"].items()) text << "  " << pad(k, 8) << g17(v.get<double>()) << "\n";
  text << "  log-likelihood " << fixed(fit.result.log_likelihood, 4) << "\n";
  text << "  converged " << (fit.result.converged ? "yes" : "no") << " after "
       << fit.result.iterations << " iterations\n";
  if (!fit.result.note.empty()) text << "  note: " << fit.result.note << "\n";
  if (fit.record.contains("selection")) {
    const json& sel = fit.record["selection"];
    text << "  NIG baseline log-likelihood " << fixed(sel["nig_log_likelihood"].get<double>(), 4)
         << "; NCIG " << (sel["accepted"].get<bool>() ? "accepted" : "not accepted") << "\n";
  }
  out.text = text.str();
  if (!fit.result.converged) out.exit_code = kExitConvergence;
  return out;
}

CommandOutput cmd_validate(const RunConfig& c) {
  const ModelParams params = resolve_params(c);
  const std::vector<double> data = load_input(c);
  const std::string model = model_name(params);
  const GofBundle gof = run_gof(params, data);

  json reports = json::array();
  for (const auto& r : gof.reports) {
    reports.push_back({{"method", to_string(r.method)},
                       {"statistic", r.statistic},
                       {"p_value", r.p_value},
                       {"n", r.n}});
  }
  const std::vector<std::size_t> counts = pit_histogram(gof.pit_sample, c.bins);
  json summary = {{"model", model},
                  {"params", params_to_json(params)},
                  {"tests", reports},
                  {"max_pp_deviation", max_pp_deviation(gof.plot)},
                  {"histogram", counts},
                  {"warning",
                   "p-values treat the fitted parameters as known; with estimated parameters the "
                   "tests are conservative"},
                  {"environment", environment(c)}};

  std::string hist = "bin_lower,bin_upper,count\n";
  for (std::size_t k = 0; k < counts.size(); ++k) {
    hist += g17(static_cast<double>(k) / counts.size()) + "," +
            g17(static_cast<double>(k + 1) / counts.size()) + "," + std::to_string(counts[k]) + "\n";
  }
  const std::string stem = "validate_" + model;
  CommandOutput out;
  out.files.add(stem + "_tests.json", summary.dump(2) + "\n");
  out.files.add(stem + "_pit_histogram.csv", hist);
  out.files.add(stem + "_qq.csv", csv_pairs("theoretical,empirical", gof.plot.qq));
  out.files.add(stem + "_pp.csv", csv_pairs("theoretical,empirical", gof.plot.pp));
  out.files.add(stem + "_qq.svg", scatter_svg(gof.plot.qq, "Q-Q plot, fitted " + model,
                                              "model quantile", "sample quantile", true));
  out.files.add(stem + "_pp.svg", scatter_svg(gof.plot.pp, "P-P plot, fitted " + model,
                                              "uniform plotting position", "model CDF", true));
  out.files.add(stem + "_pit_histogram.svg",
                histogram_svg(counts, "PIT histogram, fitted " + model));
  out.summary = summary;

  std::ostringstream text;
  text << "uniformity of PIT under fitted " << model << " (n = " << data.size() << ")\n";
  for (const auto& r : gof.reports) {
    text << "  " << pad(to_string(r.method), 9) << "statistic " << pad(general(r.statistic), 12)
         << "p-value " << fixed(r.p_value, 4) << "\n";
  }
  text << "  note: " << summary["warning"].get<std::string>() << "\n";
  out.text = text.str();
  return out;
}

CommandOutput cmd_calibrate(const RunConfig& c) {
  const ModelParams params = resolve_params(c);
  const std::string model = model_name(params);
  if (!c.target_premium) throw InvalidParameter("--target-premium (annual log premium) is required");
  const double scale = period_scale(c.period);
  const double target = *c.target_premium / scale;
  const double b = c.discount_factor;

  const FeasibleCrra feasible = feasible_crra(b, params);
  const double a = calibrate_crra(target, b, params);

  json forward = json::array();
  for (double av : c.a_values) {
    json row = {{"a", av}};
    try {
      const PremiumResult r = premium(PremiumInputs{b, av, params});
      row["log_premium_period"] = r.log_premium;
      row["log_premium_annualized"] = r.log_premium * scale;
      row["expected_return"] = r.expected_return;
      row["risk_free"] = r.risk_free;
      row["mgf_composition_diagnostic"] = mgf_composition_premium(av, params);
    } catch (const FeasibilityError& e) {
      row["error"] = e.what();
    }
    forward.push_back(row);
  }
  const auto finite_or_null = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
  // Reported CRRA for the published fixtures.
  std::optional<double> paper_crra;
  if (c.params && c.params->is_string()) {
    const std::string fixture = c.params->get<std::string>();
    if (fixture == "table2") paper_crra = 8.9626;
    else if (fixture == "table1-normal" || (fixture == "table1" && model == "normal")) paper_crra = 2582.6;
    else if (fixture == "table1") paper_crra = 33.5;
  }
  json summary = {
      {"model", model},
      {"params", params_to_json(params)},
      {"period", to_string(c.period)},
      {"convention",
       "parameters are per " + std::string(c.period == Period::monthly ? "month" : "year") +
           "; annual log premium divided by " + general(scale) +
           " before calibration, forward premia multiplied by " + general(scale) + " to annualize"},
      {"discount_factor", b},
      {"target_log_premium_annual", *c.target_premium},
      {"target_log_premium_period", target},
      {"crra", a},
      {"feasible_crra_interval", {0.0, finite_or_null(feasible.a_max)}},
      {"max_log_premium_period", finite_or_null(feasible.max_log_premium)},
      {"forward", forward},
      {"environment", environment(c)}};
  if (paper_crra) summary["paper_crra"] = *paper_crra;

  CommandOutput out;
  out.summary = summary;
  out.files.add("calibrate_" + model + ".json", summary.dump(2) + "\n");
  std::ostringstream text;
  text << "calibrated CRRA under " << model << ": " << fixed(a, 6);
  if (paper_crra) text << " (paper reports " << general(*paper_crra) << ")";
  text << "\n";
  text << "  " << summary["convention"].get<std::string>() << "\n";
  text << "  feasible CRRA interval [0, "
       << (std::isfinite(feasible.a_max) ? fixed(feasible.a_max, 6) : std::string("inf")) << ")\n";
  for (const auto& row : forward) {
    text << "  a = " << general(row["a"].get<double>()) << ": ";
    if (row.contains("error")) {
      text << row["error"].get<std::string>() << "\n";
    } else {
      text << "log premium " << general(row["log_premium_period"].get<double>()) << " per period, "
           << general(row["log_premium_annualized"].get<double>()) << " annualized\n";
    }
  }
  out.text = text.str();
  return out;
}

CommandOutput cmd_simulate(const RunConfig& c) {
  if (!c.seed) throw InvalidParameter("--seed is required for simulate");
  const ModelParams params = resolve_params(c);
  const std::string model = model_name(params);
  const std::vector<double> draws = simulate(params, c.n, *c.seed);
  std::string csv = "value\n";
  for (double x : draws) csv += g17(x) + "\n";
  CommandOutput out;
  out.files.add("simulate_" + model + ".csv", std::move(csv));
  out.summary = {{"model", model}, {"n", c.n}, {"environment", environment(c)}};
  out.text = "wrote " + std::to_string(c.n) + " " + model + " draws\n";
  return out;
}

CommandOutput cmd_repro(const RunConfig& c) {
  if (!c.seed) throw InvalidParameter("--seed is required for repro");
  const std::uint64_t seed = *c.seed;
  const double annual = c.target_premium.value_or(paper_target_premium());
  const double b = c.discount_factor;
  const std::size_t n = std::max<std::size_t>(c.n, 64);

  // simulate
  const std::vector<double> data1 = nig_sample(table1_nig(), n, seed);
  const std::vector<double> data2 = ncig_sample(table2_ncig(), n, seed + 1);

  // fit
  const FitBundle normal1 = fit_model("normal", data1, c.starts);
  const FitBundle nig1 = fit_model("nig", data1, c.starts);
  const FitBundle ncig2 = fit_model("ncig", data2, c.starts);

  // validate
  const GofBundle gof_normal = run_gof(normal1.result.params, data1);
  const GofBundle gof_nig = run_gof(nig1.result.params, data1);

  // calibrate
  struct Row {
    std::string name;
    ModelParams paper_params;
    ModelParams fitted_params;
    double paper_crra;
  };
  const Row rows[] = {{"normal", table1_normal(), normal1.result.params, 2582.6},
                      {"nig", table1_nig(), nig1.result.params, 33.5},
                      {"ncig", table2_ncig(), ncig2.result.params, 8.9626}};

  json calibration = json::array();
  std::ostringstream table;
  table << "Calibrated CRRA (target annual log premium " << fixed(annual, 6)
        << " = ln(1.0681) - ln(1.00987), b = " << general(b) << ")\n";
  table << "pinned convention: parameters are monthly, target / 12 per period\n";
  table << "alternative: annual target applied per period without conversion\n\n";
  table << pad("model", 8) << pad("paper", 11) << pad("pinned", 14) << pad("alternative", 14)
        << pad("fitted+pinned", 15) << "a_max\n";
  for (const Row& r : rows) {
    const CrraOutcome pinned = try_calibrate(annual / 12.0, b, r.paper_params);
    const CrraOutcome alternative = try_calibrate(annual, b, r.paper_params);
    const CrraOutcome fitted = try_calibrate(annual / 12.0, b, r.fitted_params);
    const FeasibleCrra fc = feasible_crra(b, r.paper_params);
    calibration.push_back({{"model", r.name},
                           {"paper", r.paper_crra},
                           {"pinned", pinned.to_json()},
                           {"alternative", alternative.to_json()},
                           {"fitted_pinned", fitted.to_json()},
                           {"a_max", std::isfinite(fc.a_max) ? json(fc.a_max) : json(nullptr)}});
    table << pad(r.name, 8) << pad(fixed(r.paper_crra, 4), 11) << pad(pinned.cell(), 14)
          << pad(alternative.cell(), 14) << pad(fitted.cell(), 15)
          << (std::isfinite(fc.a_max) ? fixed(fc.a_max, 4) : std::string("inf")) << "\n";
  }

  const PremiumResult forward = premium_nig(b, 10.0, table1_nig());
  constexpr double kPaperForward = 0.002223;
  table << "\nForward NIG premium at a = 10 (Table 1 parameters)\n";
  table << pad("paper", 14) << pad("per period", 14) << "annualized x12\n";
  table << pad(fixed(100 * kPaperForward, 4) + "%", 14)
        << pad(fixed(100 * forward.log_premium, 4) + "%", 14)
        << fixed(1200 * forward.log_premium, 4) << "%\n";

  const double normal_ll = normal1.result.log_likelihood;
  const double nig_ll = nig1.result.log_likelihood;
  table << "\nLog-likelihood on " << n << " simulated Table 1 NIG draws (paper data: 4192.89 / 4444.44)\n";
  table << "  normal " << fixed(normal_ll, 2) << "  nig " << fixed(nig_ll, 2) << "\n";
  const json& sel = ncig2.record["selection"];
  table << "NCIG selection on " << n << " simulated Table 2 draws: NCIG "
        << fixed(ncig2.result.log_likelihood, 2) << " vs NIG "
        << fixed(sel["nig_log_likelihood"].get<double>(), 2) << " -> "
        << (sel["accepted"].get<bool>() ? "NCIG accepted" : "NCIG not accepted") << "\n";

  table << "\nPIT uniformity p-values (paper NIG: KS 0.58, Neyman 0.89, Frosini 0.76)\n";
  json gof = json::object();
  for (const auto* g : {&gof_normal, &gof_nig}) {
    const std::string name = g == &gof_normal ? "normal" : "nig";
    table << "  " << pad(name, 7);
    json reports = json::object();
    for (const auto& r : g->reports) {
      table << pad(to_string(r.method) + " " + fixed(r.p_value, 4), 16);
      reports[to_string(r.method)] = r.p_value;
    }
    gof[name] = reports;
    table << "\n";
  }
  table << "\nPaper values come from proprietary data and an unstated period convention; "
           "they are shown for comparison, not asserted.\n";

  json summary = {{"n", n},
                  {"target_log_premium_annual", annual},
                  {"discount_factor", b},
                  {"calibration", calibration},
                  {"forward_nig_a10", {{"paper", kPaperForward},
                                       {"per_period", forward.log_premium},
                                       {"annualized", 12 * forward.log_premium}}},
                  {"fits", {{"normal", normal1.record}, {"nig", nig1.record}, {"ncig", ncig2.record}}},
                  {"gof_p_values", gof},
                  {"environment", environment(c)}};
  CommandOutput out;
  out.summary = summary;
  out.text = table.str();
  out.files.add("repro.json", summary.dump(2) + "\n");
  out.files.add("repro.txt", out.text);
  return out;
}

CommandOutput run_command(const RunConfig& c) {
  if (c.command == "fit") return cmd_fit(c);
  if (c.command == "validate") return cmd_validate(c);
  if (c.command == "calibrate") return cmd_calibrate(c);
  if (c.command == "simulate") return cmd_simulate(c);
  if (c.command == "repro") return cmd_repro(c);
  throw InvalidParameter("unknown command '" + c.command + "'");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equity premium calibration under normal, NIG and NCIG consumption growth"};
  app.require_subcommand(1);

  std::string config_path, model, input, schema, transform, period, out_dir, fit, params;
  std::uint64_t seed = 0;
  double target = 0.0, discount = 0.0;
  std::size_t n = 0, bins = 0;
  std::vector<double> a_values;
  int starts = 0;
  bool resample = false;

  auto* o_config = app.add_option("--config", config_path, "JSON config; flags override it");
  auto* o_model = app.add_option("--model", model, "normal | nig | ncig");
  auto* o_input = app.add_option("--input", input, "CSV input");
  auto* o_schema = app.add_option("--schema", schema, "value column, or date:value for dated series");
  auto* o_transform = app.add_option("--transform", transform, "none | log_growth (dated input)");
  auto* o_resample = app.add_flag("--resample", resample, "carry observations forward over gaps");
  auto* o_seed = app.add_option("--seed", seed, "random seed");
  auto* o_period = app.add_option("--period", period, "monthly | annual");
  auto* o_target = app.add_option("--target-premium", target, "annual log equity premium");
  auto* o_discount = app.add_option("--discount-factor", discount, "b in (0,1)");
  auto* o_out = app.add_option("--out", out_dir, "output directory");
  auto* o_fit = app.add_option("--fit", fit, "fit result JSON");
  auto* o_params = app.add_option("--params", params, "parameter JSON or fixture name");
  auto* o_n = app.add_option("--n", n, "number of draws");
  auto* o_a = app.add_option("--a", a_values, "CRRA values for forward premia");
  auto* o_starts = app.add_option("--starts", starts, "NCIG multi-start count");
  auto* o_bins = app.add_option("--bins", bins, "PIT histogram bins");

  const std::pair<const char*, const char*> subcommands[] = {
      {"fit", "estimate a model from a return series"},
      {"validate", "goodness-of-fit tests and Q-Q/P-P data for a fit"},
      {"calibrate", "implied CRRA for a target premium, or forward premia"},
      {"simulate", "draw a sample from a parameterized model"},
      {"repro", "published-table reproduction under both period conventions"},
  };
  for (const auto& [name, help] : subcommands) app.add_subcommand(name, help)->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  RunConfig c;
  try {
    if (o_config->count()) {
      std::ifstream in(config_path);
      if (!in) throw IoError("cannot open config " + config_path);
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw InvalidParameter("config " + config_path + " is not valid JSON: " + e.what());
      }
      apply_json(c, j);
    }
    c.command = app.get_subcommands().front()->get_name();
    if (o_model->count()) c.model = model;
    if (o_input->count()) c.input = input;
    if (o_schema->count()) c.schema = schema;
    if (o_transform->count()) c.transform = transform;
    if (o_resample->count()) c.resample = resample;
    if (o_seed->count()) c.seed = seed;
    if (o_period->count()) c.period = parse_period(period);
    if (o_target->count()) c.target_premium = target;
    if (o_discount->count()) c.discount_factor = discount;
    if (o_out->count()) c.out = out_dir;
    if (o_fit->count()) c.fit = fit;
    if (o_params->count()) {
      try {
        c.params = nlohmann::json::parse(params);
      } catch (const nlohmann::json::exception&) {
        c.params = params;  // fixture name
      }
    }
    if (o_n->count()) c.n = n;
    if (o_a->count()) c.a_values = a_values;
    if (o_starts->count()) c.starts = starts;
    if (o_bins->count()) c.bins = bins;

    const CommandOutput result = run_command(c);
    result.files.commit(c.out);
    out << result.text;
    return result.exit_code;
  } catch (const Error& e) {
    err << "error [" << to_string(e.family()) << "]: " << e.what() << "\n";
    return exit_code_for(e.family());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error [io]: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUnknown;
  }
}

}  // namespace levyprem::cli
