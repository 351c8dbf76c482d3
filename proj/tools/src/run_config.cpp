#include "levyprem_cli/run_config.hpp"

#include "levyprem/errors.hpp"

namespace levyprem::cli {
namespace {

double number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw InvalidParameter(std::string("parameter '") + key + "' missing or not a number");
  }
  return j.at(key).get<double>();
}

}  // namespace

NormalParams table1_normal() { return NormalParams(0.00145, 0.01287); }
NigParams table1_nig() { return NigParams(0.002351, 38.437308, -5.194172, 0.006590); }
NcigParams table2_ncig() { return NcigParams(195.903, 0.261, 0.08, 3.472); }

std::string model_name(const ModelParams& p) {
  switch (p.index()) {
    case 0: return "normal";
    case 1: return "nig";
    default: return "ncig";
  }
}

ModelParams params_from_json(const std::string& model, const nlohmann::json& j) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "table1" && (model == "nig" || model.empty())) return table1_nig();
    if (name == "table1" && model == "normal") return table1_normal();
    if (name == "table1-normal") return table1_normal();
    if (name == "table2" && (model == "ncig" || model.empty())) return table2_ncig();
    throw InvalidParameter("unknown parameter fixture '" + name + "' for model '" + model + "'");
  }
  if (!j.is_object()) throw InvalidParameter("params must be an object or a fixture name");
  if (model == "normal") return NormalParams(number(j, "mu"), number(j, "sigma"));
  if (model == "nig") {
    return NigParams(number(j, "mu"), number(j, "alpha"), number(j, "beta"), number(j, "delta"));
  }
  if (model == "ncig") {
    return NcigParams(number(j, "lambda"), number(j, "mu"), number(j, "nu"), number(j, "sigma2"));
  }
  throw InvalidParameter("model must be one of normal, nig, ncig (got '" + model + "')");
}

nlohmann::json params_to_json(const ModelParams& p) {
  return std::visit(
      [](const auto& q) -> nlohmann::json {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, NormalParams>) {
          return {{"mu", q.mu()}, {"sigma", q.sigma()}};
        } else if constexpr (std::is_same_v<T, NigParams>) {
          return {{"mu", q.mu()}, {"alpha", q.alpha()}, {"beta", q.beta()}, {"delta", q.delta()}};
        } else {
          return {{"lambda", q.lambda()}, {"mu", q.mu()}, {"nu", q.nu()}, {"sigma2", q.sigma2()}};
        }
      },
      p);
}

void apply_json(RunConfig& c, const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidParameter("config file must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "command") c.command = value.get<std::string>();
      else if (key == "model") c.model = value.get<std::string>();
      else if (key == "input") c.input = value.get<std::string>();
      else if (key == "schema") c.schema = value.get<std::string>();
      else if (key == "transform") c.transform = value.get<std::string>();
      else if (key == "resample") c.resample = value.get<bool>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "period") c.period = parse_period(value.get<std::string>());
      else if (key == "target_premium") c.target_premium = value.get<double>();
      else if (key == "discount_factor") c.discount_factor = value.get<double>();
      else if (key == "out") c.out = value.get<std::string>();
      else if (key == "fit") c.fit = value.get<std::string>();
      else if (key == "params") c.params = value;
      else if (key == "n") c.n = value.get<std::size_t>();
      else if (key == "a") c.a_values = value.get<std::vector<double>>();
      else if (key == "starts") c.starts = value.get<int>();
      else if (key == "bins") c.bins = value.get<std::size_t>();
      else throw InvalidParameter("unknown config key '" + key + "'");
    } catch (const nlohmann::json::exception& e) {
      throw InvalidParameter("config key '" + key + "': " + e.what());
    }
  }
}

}  // namespace levyprem::cli
