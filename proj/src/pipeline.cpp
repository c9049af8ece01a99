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

#include "speechsum/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <stdexcept>

#include "speechsum/exact.hpp"
#include "speechsum/kernels.hpp"
#include "speechsum/pruning.hpp"

namespace speechsum {

namespace {

// Calls `fn` with every subset of `pool` of size `size`, in lexicographic
// order of positions.
template <typename Fn>
void for_each_combination(std::span<const DimId> pool, std::size_t size, Fn&& fn) {
  if (size > pool.size()) return;
  std::vector<std::size_t> idx(size);
  for (std::size_t i = 0; i < size; ++i) idx[i] = i;
  while (true) {
    ColumnSet cols;
    for (std::size_t i : idx) cols.insert(pool[i]);
    fn(cols);
    std::size_t j = size;
    while (j > 0 && idx[j - 1] == pool.size() - size + (j - 1)) --j;
    if (j == 0) return;
    ++idx[j - 1];
    for (std::size_t i = j; i < size; ++i) idx[i] = idx[i - 1] + 1;
  }
}

std::vector<DimId> iota_dims(std::size_t n) {
  std::vector<DimId> dims(n);
  for (std::size_t d = 0; d < n; ++d) dims[d] = static_cast<DimId>(d);
  return dims;
}

struct ScopeOutcome {
  std::optional<SpeechRecord> record;
  std::size_t gain_evaluations = 0;
  bool empty = false;
};

ScopeOutcome summarize_scope(const Dataset& ds, std::size_t target,
                             const Scope& scope, const EngineConfig& config,
                             ColumnSet required, double prior, bool parallel,
                             const Deadline& deadline) {
  ScopeOutcome out;
  const Slice slice = Slice::of_scope(ds, target, scope);
  if (slice.empty()) {
    out.empty = true;
    return out;
  }
  const std::vector<ColumnSet> groups =
      candidate_fact_groups(scope.columns(), ds.n_dims(),
                            config.max_extra_fact_preds, required);
  const FactCatalog catalog = FactCatalog::generate(slice, groups);
  if (catalog.empty()) {
    out.empty = true;
    return out;
  }
  SummaryResult result =
      summarize(catalog, prior, static_cast<std::size_t>(config.speech_length),
                config.algorithm, config.pruning, parallel, deadline);
  out.gain_evaluations = result.gain_evaluations;
  // Nothing improved on the prior: state the most general fact instead of
  // saying nothing. Its gain is zero, so the utility is unchanged.
  if (result.chosen.empty() && config.speech_length > 0) {
    result.chosen.push_back(0);
    result.speech = catalog.speech(result.chosen);
  }

  SpeechRecord record;
  record.target = ds.target(target).name;
  record.scope = name_scope(ds, scope);
  for (FactId id : result.chosen) {
    const Fact& f = catalog.fact(id);
    record.facts.push_back(StoredFact{name_scope(ds, f.scope), f.value, f.support});
  }
  record.utility = result.utility;
  record.base_error = result.base_error;
  if (!record.facts.empty()) record.text = render_speech(record.target, record.facts);
  out.record = std::move(record);
  return out;
}

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::vector<Problem> enumerate_problems(const Dataset& ds,
                                        const EngineConfig& config) {
  const std::vector<DimId> dims = iota_dims(ds.n_dims());
  const std::size_t max_size =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(config.max_query_preds, 0)),
                            dims.size());
  std::vector<ColumnSet> column_sets;
  for (std::size_t size = 0; size <= max_size; ++size) {
    for_each_combination(dims, size, [&](ColumnSet c) { column_sets.push_back(c); });
  }

  std::vector<Problem> problems;
  for (std::size_t t = 0; t < ds.n_targets(); ++t) {
    for (ColumnSet cols : column_sets) {
      problems.push_back(Problem{t, QueryScopeGroup{cols, distinct_combinations(ds, cols)}});
    }
  }
  return problems;
}

std::vector<ColumnSet> candidate_fact_groups(ColumnSet query, std::size_t n_dims,
                                             int max_extra, ColumnSet required) {
  std::vector<DimId> free;
  for (DimId d = 0; d < n_dims; ++d) {
    if (!query.contains(d)) free.push_back(d);
  }
  const std::size_t extra =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(max_extra, 0)), free.size());
  std::vector<ColumnSet> out;
  for (std::size_t size = 0; size <= extra; ++size) {
    for_each_combination(free, size, [&](ColumnSet c) {
      const ColumnSet group = c.unite(query);
      if (required.subset_of(group)) out.push_back(group);
    });
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

ColumnSet required_columns(const Dataset& ds, const EngineConfig& config) {
  ColumnSet required;
  for (const std::string& name : config.required_fact_columns) {
    const auto d = ds.find_dimension(name);
    if (!d) throw ConfigError("required fact column '" + name + "' is not a dimension");
    required.insert(*d);
  }
  return required;
}

double resolve_prior(const Dataset& ds, std::size_t target,
                     const EngineConfig& config) {
  return config.prior ? *config.prior : ds.target(target).mean();
}

SummaryResult summarize(const FactCatalog& catalog, double prior, std::size_t m,
                        Algorithm algorithm, const PruningConfig& pruning,
                        bool parallel, const Deadline& deadline) {
  switch (algorithm) {
    case Algorithm::kGreedy: {
      FullScan scan(parallel);
      return greedy_summary(catalog, prior, m, &scan, deadline);
    }
    case Algorithm::kGreedyPruned: {
      PlannedPruning provider(PlannedPruning::Mode::kNaive, pruning, parallel);
      return greedy_summary(catalog, prior, m, &provider, deadline);
    }
    case Algorithm::kGreedyOpt: {
      PlannedPruning provider(PlannedPruning::Mode::kOptimized, pruning, parallel);
      return greedy_summary(catalog, prior, m, &provider, deadline);
    }
    case Algorithm::kExact: {
      FullScan scan(parallel);
      const SummaryResult greedy = greedy_summary(catalog, prior, m, &scan, deadline);
      ExactOptions options;
      options.lower_bound = greedy.utility;
      options.seed = greedy.chosen;
      options.parallel = parallel;
      options.deadline = deadline;
      ExactResult exact = exact_summary(catalog, prior, m, options);
      exact.gain_evaluations += greedy.gain_evaluations;
      return static_cast<SummaryResult&&>(std::move(exact));
    }
  }
  throw std::logic_error("unknown algorithm");
}

std::string format_value(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  std::string s(buf);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

std::string scope_phrase(const NamedScope& scope) {
  if (scope.empty()) return "overall";
  std::string out;
  for (std::size_t i = 0; i < scope.size(); ++i) {
    if (i > 0) out += " and ";
    out += scope[i].first + "=" + scope[i].second;
  }
  return out;
}

std::string render_speech(std::string_view target,
                          std::span<const StoredFact> facts) {
  if (facts.empty()) throw std::invalid_argument("cannot render a speech without facts");
  std::string text = "The average " + std::string(target) + " for " +
                     scope_phrase(facts[0].scope) + " is " +
                     format_value(facts[0].value) + ".";
  for (std::size_t i = 1; i < facts.size(); ++i) {
    text += " It is " + format_value(facts[i].value) + " for " +
            scope_phrase(facts[i].scope) + ".";
  }
  return text;
}

NamedScope name_scope(const Dataset& ds, const Scope& scope) {
  NamedScope named;
  for (const Binding& b : scope.bindings()) {
    const DimensionColumn& col = ds.dimension(b.dim);
    named.emplace_back(col.name(), col.decode(b.value));
  }
  normalize(named);
  return named;
}

std::vector<SpeechRecord> preprocess(const Dataset& ds,
                                     const EngineConfig& config,
                                     const PreprocessOptions& options,
                                     PreprocessReport* report) {
  PreprocessReport local;
  PreprocessReport& rep = report ? *report : local;
  const ColumnSet required = required_columns(ds, config);
  const int saved_threads = kernels::max_threads();
  if (options.threads > 0) kernels::set_threads(options.threads);
  const int threads = kernels::max_threads();

  std::vector<SpeechRecord> records;
  const std::vector<Problem> problems = enumerate_problems(ds, config);
  for (std::size_t t = 0; t < ds.n_targets(); ++t) {
    rep.targets.push_back(TargetTiming{ds.target(t).name, 0.0, 0});
  }

  for (const Problem& problem : problems) {
    const auto start = std::chrono::steady_clock::now();
    const Deadline deadline = options.group_timeout
                                  ? Deadline::after(*options.group_timeout)
                                  : Deadline();
    const double prior = resolve_prior(ds, problem.target, config);
    const std::vector<Scope>& scopes = problem.group.scopes;
    std::vector<ScopeOutcome> outcomes(scopes.size());
    std::atomic<bool> timed_out{false};

    // Many small scopes: one per thread. Few scopes: parallelize inside.
    const bool outer = threads > 1 && scopes.size() >= 2 * static_cast<std::size_t>(threads);
    const long n = static_cast<long>(scopes.size());
#pragma omp parallel for schedule(dynamic, 1) if (outer)
    for (long i = 0; i < n; ++i) {
      if (timed_out.load(std::memory_order_relaxed)) continue;
      const auto s = static_cast<std::size_t>(i);
      try {
        outcomes[s] = summarize_scope(ds, problem.target, scopes[s], config,
                                      required, prior, !outer, deadline);
      } catch (const TimeoutError&) {
        timed_out.store(true, std::memory_order_relaxed);
      }
    }

    TargetTiming& timing = rep.targets[problem.target];
    if (timed_out.load()) {
      ++rep.timeouts;
      std::string cols;
      for (DimId d : problem.group.columns.ids()) {
        if (!cols.empty()) cols += ",";
        cols += ds.dimension(d).name();
      }
      rep.warnings.push_back("timeout: target " + ds.target(problem.target).name +
                             ", query columns {" + cols + "}; group skipped");
    } else {
      for (ScopeOutcome& o : outcomes) {
        rep.gain_evaluations += o.gain_evaluations;
        if (o.empty) {
          ++rep.skipped_empty;
        } else if (o.record) {
          records.push_back(std::move(*o.record));
          ++timing.records;
        }
      }
    }
    timing.millis += std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  }
  if (options.threads > 0) kernels::set_threads(saved_threads);

  std::sort(records.begin(), records.end(),
            [](const SpeechRecord& a, const SpeechRecord& b) { return a.key() < b.key(); });
  rep.records = records.size();
  return records;
}

StoreSchema schema_of(const Dataset& ds) {
  StoreSchema schema;
  for (const TargetColumn& t : ds.targets()) schema.targets.push_back(t.name);
  for (const DimensionColumn& d : ds.dimensions()) {
    std::vector<std::string> values = d.dictionary();
    std::sort(values.begin(), values.end());
    schema.dimensions.emplace_back(d.name(), std::move(values));
  }
  return schema;
}

SpeechStore build_store(const Dataset& ds, const EngineConfig& config,
                        const PreprocessOptions& options,
                        PreprocessReport* report) {
  StoreManifest manifest;
  manifest.config = to_json(config);
  if (!config.data.empty()) {
    try {
      manifest.fingerprint = fingerprint_file(config.data);
    } catch (const StoreError&) {
      manifest.fingerprint.clear();
    }
  }
  manifest.created = utc_now();
  manifest.schema = schema_of(ds);
  SpeechStore store(std::move(manifest));
  store.assign(preprocess(ds, config, options, report));
  return store;
}

}  // namespace speechsum
