#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "levyprem/data_io.hpp"
#include "levyprem/estimation.hpp"

namespace levyprem::cli {

struct RunConfig {
  std::string command;
  std::string model;  // normal | nig | ncig
  std::optional<std::filesystem::path> input;
  /// "value" (single column) or "date:value" (dated series).
  std::string schema = "value";
  /// none | log_growth, applied to dated input.
  std::string transform = "none";
  bool resample = false;
  std::optional<std::uint64_t> seed;
  Period period = Period::monthly;
  /// Annual log equity premium.
  std::optional<double> target_premium;
  double discount_factor = 0.99;
  std::filesystem::path out = "out";
  /// Result file written by `fit`.
  std::optional<std::filesystem::path> fit;
  /// Parameter object or fixture name (table1, table1-normal, table2).
  std::optional<nlohmann::json> params;
  std::size_t n = 10000;
  std::vector<double> a_values{10.0};
  int starts = 8;
  std::size_t bins = 20;
};

/// Applies the keys of a JSON config object; unknown keys are errors.
void apply_json(RunConfig& config, const nlohmann::json& j);

/// Model parameters from a JSON object ({"mu": .., "sigma": ..} etc.) or a
/// fixture name.
ModelParams params_from_json(const std::string& model, const nlohmann::json& j);
nlohmann::json params_to_json(const ModelParams& p);
std::string model_name(const ModelParams& p);

/// Paper fixtures: Table 1 normal and NIG rows, Table 2 NCIG row.
NormalParams table1_normal();
NigParams table1_nig();
NcigParams table2_ncig();

}  // namespace levyprem::cli
