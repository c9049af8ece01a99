// Copyright 2026 The speechsum Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "speechsum/config.hpp"

#include <fstream>

#include "speechsum/errors.hpp"

namespace speechsum {

namespace {

using nlohmann::json;

std::vector<std::string> string_list(const json& doc, const char* field,
                                     bool required) {
  if (!doc.contains(field)) {
    if (required) throw ConfigError(std::string("missing field '") + field + "'");
    return {};
  }
  const json& node = doc.at(field);
  if (!node.is_array()) {
    throw ConfigError(std::string("field '") + field + "' must be a list");
  }
  std::vector<std::string> out;
  for (const json& item : node) {
    if (!item.is_string()) {
      throw ConfigError(std::string("field '") + field +
                        "' must contain strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

int non_negative_int(const json& doc, const char* field, int fallback) {
  if (!doc.contains(field)) return fallback;
  const json& node = doc.at(field);
  if (!node.is_number_integer() || node.get<long long>() < 0) {
    throw ConfigError(std::string("field '") + field +
                      "' must be a non-negative integer");
  }
  return node.get<int>();
}

double positive_real(const json& doc, const char* field, double fallback) {
  if (!doc.contains(field)) return fallback;
  const json& node = doc.at(field);
  if (!node.is_number() || !(node.get<double>() > 0.0)) {
    throw ConfigError(std::string("field '") + field +
                      "' must be a positive number");
  }
  return node.get<double>();
}

}  // namespace

std::string_view to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::kExact:
      return "exact";
    case Algorithm::kGreedy:
      return "greedy";
    case Algorithm::kGreedyPruned:
      return "greedy-pruned";
    case Algorithm::kGreedyOpt:
      return "greedy-opt";
  }
  return "greedy";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "exact") return Algorithm::kExact;
  if (name == "greedy") return Algorithm::kGreedy;
  if (name == "greedy-pruned") return Algorithm::kGreedyPruned;
  if (name == "greedy-opt") return Algorithm::kGreedyOpt;
  throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

EngineConfig parse_config(const nlohmann::json& doc,
                          const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  EngineConfig cfg;
  if (!doc.contains("data") || !doc.at("data").is_string()) {
    throw ConfigError("missing field 'data'");
  }
  cfg.data = doc.at("data").get<std::string>();
  if (cfg.data.is_relative() && !base_dir.empty()) cfg.data = base_dir / cfg.data;

  cfg.dimensions = string_list(doc, "dimensions", true);
  cfg.targets = string_list(doc, "targets", true);
  if (cfg.targets.empty()) throw ConfigError("at least one target is required");
  cfg.required_fact_columns = string_list(doc, "required_fact_columns", false);

  cfg.max_query_preds = non_negative_int(doc, "max_query_preds", 2);
  cfg.max_extra_fact_preds = non_negative_int(doc, "max_extra_fact_preds", 2);
  cfg.speech_length = non_negative_int(doc, "speech_length", 3);

  if (doc.contains("prior")) {
    const json& prior = doc.at("prior");
    if (prior.is_number()) {
      cfg.prior = prior.get<double>();
    } else if (!(prior.is_string() && prior.get<std::string>() == "column_mean")) {
      throw ConfigError("field 'prior' must be a number or \"column_mean\"");
    }
  }
  if (doc.contains("algorithm")) {
    if (!doc.at("algorithm").is_string()) {
      throw ConfigError("field 'algorithm' must be a string");
    }
    cfg.algorithm = parse_algorithm(doc.at("algorithm").get<std::string>());
  }
  if (doc.contains("pruning")) {
    const json& p = doc.at("pruning");
    if (!p.is_object()) throw ConfigError("field 'pruning' must be an object");
    cfg.pruning.sigma = positive_real(p, "sigma", cfg.pruning.sigma);
    cfg.pruning.w_u = positive_real(p, "w_u", cfg.pruning.w_u);
    cfg.pruning.w_d = positive_real(p, "w_d", cfg.pruning.w_d);
  }
  if (doc.contains("delimiter")) {
    const json& d = doc.at("delimiter");
    if (!d.is_string() || d.get<std::string>().size() != 1) {
      throw ConfigError("field 'delimiter' must be a single character");
    }
    cfg.delimiter = d.get<std::string>()[0];
  }
  return cfg;
}

EngineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return parse_config(doc, path.parent_path());
}

nlohmann::json to_json(const EngineConfig& config) {
  nlohmann::json doc;
  doc["data"] = config.data.filename().string();
  doc["dimensions"] = config.dimensions;
  doc["targets"] = config.targets;
  doc["max_query_preds"] = config.max_query_preds;
  doc["max_extra_fact_preds"] = config.max_extra_fact_preds;
  doc["speech_length"] = config.speech_length;
  if (config.prior) {
    doc["prior"] = *config.prior;
  } else {
    doc["prior"] = "column_mean";
  }
  doc["algorithm"] = std::string(to_string(config.algorithm));
  doc["pruning"] = {{"sigma", config.pruning.sigma},
                    {"w_u", config.pruning.w_u},
                    {"w_d", config.pruning.w_d}};
  if (!config.required_fact_columns.empty()) {
    doc["required_fact_columns"] = config.required_fact_columns;
  }
  return doc;
}

}  // namespace speechsum
