#pragma once

#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "prlab/error.hpp"
#include "prlab/experiment.hpp"

namespace prlab {

namespace detail {

inline Preference parse_preference(const std::string& text) {
  if (text == "uniform") return {};
  if (text == "c1") return {Preference::Kind::kSetC1, 0};
  if (text.starts_with("unit:")) {
    const auto rest = text.substr(5);
    std::size_t used = 0;
    unsigned long long k = 0;
    try {
      k = std::stoull(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == rest.size() && !rest.empty()) return {Preference::Kind::kUnit, k};
  }
  throw Error(ErrorCode::kScenarioInvalid,
              "preference must be \"uniform\", \"c1\" or \"unit:<k>\", got \"" + text + "\"");
}

}  // namespace detail

/// Builds a scenario from one JSON object. Keys mirror the Scenario fields;
/// anything else is an error.
inline Scenario scenario_from_json(const nlohmann::json& j) {
  static const std::set<std::string> known = {
      "name",          "family",           "n_grid",         "replicates",
      "alpha",         "base_seed",        "family_params",  "preference",
      "resample_limit", "component_policy", "spectral_tol",  "spectral_max_iter"};
  if (!j.is_object()) throw Error(ErrorCode::kScenarioInvalid, "scenario must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw Error(ErrorCode::kScenarioInvalid, "unknown key '" + key + "'");
  }
  if (!j.contains("family")) throw Error(ErrorCode::kScenarioInvalid, "missing 'family'");
  if (!j.contains("n_grid")) throw Error(ErrorCode::kScenarioInvalid, "missing 'n_grid'");

  Scenario s;
  try {
    s.family = parse_family(j.at("family").get<std::string>());
    s.name = j.value("name", std::string(to_string(s.family)));
    s.n_grid = j.at("n_grid").get<std::vector<std::size_t>>();
    s.replicates = j.value("replicates", s.replicates);
    s.alpha = j.value("alpha", s.alpha);
    s.base_seed = j.value("base_seed", s.base_seed);
    if (j.contains("family_params")) {
      s.family_params = j.at("family_params").get<std::map<std::string, double>>();
    }
    if (j.contains("preference")) {
      s.preference = detail::parse_preference(j.at("preference").get<std::string>());
    }
    s.resample_limit = j.value("resample_limit", s.resample_limit);
    if (j.contains("component_policy")) {
      const auto policy = j.at("component_policy").get<std::string>();
      if (policy == "resample") {
        s.component_policy = ComponentPolicy::kResample;
      } else if (policy == "giant") {
        s.component_policy = ComponentPolicy::kGiant;
      } else {
        throw Error(ErrorCode::kScenarioInvalid, "component_policy must be resample or giant");
      }
    }
    s.spectral_tol = j.value("spectral_tol", s.spectral_tol);
    s.spectral_max_iter = j.value("spectral_max_iter", s.spectral_max_iter);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kScenarioInvalid, e.what());
  }
  s.validate();
  return s;
}

/// A config is either one scenario object or an array of them.
inline std::vector<Scenario> parse_config(const nlohmann::json& j) {
  std::vector<Scenario> out;
  if (j.is_array()) {
    for (const auto& item : j) out.push_back(scenario_from_json(item));
  } else {
    out.push_back(scenario_from_json(j));
  }
  if (out.empty()) throw Error(ErrorCode::kScenarioInvalid, "config has no scenarios");
  std::set<std::string> names;
  for (const auto& s : out) {
    if (!names.insert(s.name).second) {
      throw Error(ErrorCode::kScenarioInvalid, "duplicate scenario name '" + s.name + "'");
    }
  }
  return out;
}

inline std::vector<Scenario> load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
  return parse_config(j);
}

}  // namespace prlab
