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

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace speechsum {

enum class Algorithm {
  kExact,         // optimal; seeded with the greedy result as lower bound
  kGreedy,        // greedy, every fact's gain evaluated each iteration
  kGreedyPruned,  // greedy with the naive pruning plan
  kGreedyOpt,     // greedy with the cost-optimized pruning plan
};

std::string_view to_string(Algorithm algo);
// Throws ConfigError on an unknown name.
Algorithm parse_algorithm(std::string_view name);

struct PruningConfig {
  double sigma = 0.25;
  double w_u = 1.0;
  double w_d = 0.3;
};

struct EngineConfig {
  std::filesystem::path data;
  std::vector<std::string> dimensions;
  std::vector<std::string> targets;
  int max_query_preds = 2;
  int max_extra_fact_preds = 2;
  int speech_length = 3;
  // Unset means the overall mean of each target column.
  std::optional<double> prior;
  Algorithm algorithm = Algorithm::kGreedyOpt;
  PruningConfig pruning;
  // Unset means auto-detect from the header (tab if present, else comma).
  std::optional<char> delimiter;
  // Every fact scope must restrict these columns.
  std::vector<std::string> required_fact_columns;
};

// Relative `data` paths are resolved against `base_dir`.
EngineConfig parse_config(const nlohmann::json& doc,
                          const std::filesystem::path& base_dir = {});
EngineConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const EngineConfig& config);

}  // namespace speechsum
