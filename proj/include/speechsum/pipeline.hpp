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

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "speechsum/catalog.hpp"
#include "speechsum/config.hpp"
#include "speechsum/dataset.hpp"
#include "speechsum/errors.hpp"
#include "speechsum/greedy.hpp"
#include "speechsum/store.hpp"

namespace speechsum {

struct QueryScopeGroup {
  ColumnSet columns;
  std::vector<Scope> scopes;  // combinations present in the data
};

struct Problem {
  std::size_t target = 0;
  QueryScopeGroup group;
};

// Targets in dataset order; column sets of size 0..max_query_preds in
// canonical order.
std::vector<Problem> enumerate_problems(const Dataset& ds,
                                        const EngineConfig& config);

// Supersets of `query` adding up to `max_extra` of the `n_dims` columns,
// canonical order, restricted to sets containing `required`.
std::vector<ColumnSet> candidate_fact_groups(ColumnSet query, std::size_t n_dims,
                                             int max_extra,
                                             ColumnSet required = {});

ColumnSet required_columns(const Dataset& ds, const EngineConfig& config);

double resolve_prior(const Dataset& ds, std::size_t target,
                     const EngineConfig& config);

// Runs `algorithm` on one catalog. Exact is seeded with the greedy result.
SummaryResult summarize(const FactCatalog& catalog, double prior, std::size_t m,
                        Algorithm algorithm, const PruningConfig& pruning,
                        bool parallel = true, const Deadline& deadline = {});

// Up to two decimals, trailing zeros trimmed.
std::string format_value(double value);

// Column=value tokens joined by " and "; "overall" for the empty scope.
std::string scope_phrase(const NamedScope& scope);

// Throws std::invalid_argument when `facts` is empty.
std::string render_speech(std::string_view target,
                          std::span<const StoredFact> facts);

NamedScope name_scope(const Dataset& ds, const Scope& scope);

struct PreprocessOptions {
  int threads = 0;  // 0 keeps the OpenMP default
  std::optional<std::chrono::milliseconds> group_timeout;
};

struct TargetTiming {
  std::string target;
  double millis = 0.0;
  std::size_t records = 0;
};

struct PreprocessReport {
  std::size_t records = 0;
  std::size_t gain_evaluations = 0;
  std::size_t skipped_empty = 0;
  std::size_t timeouts = 0;
  std::vector<std::string> warnings;
  std::vector<TargetTiming> targets;
};

// Records for every non-empty query scope, sorted by key.
std::vector<SpeechRecord> preprocess(const Dataset& ds,
                                     const EngineConfig& config,
                                     const PreprocessOptions& options = {},
                                     PreprocessReport* report = nullptr);

StoreSchema schema_of(const Dataset& ds);

// Records plus a manifest; the fingerprint is left empty when the data file
// cannot be read.
SpeechStore build_store(const Dataset& ds, const EngineConfig& config,
                        const PreprocessOptions& options = {},
                        PreprocessReport* report = nullptr);

}  // namespace speechsum
