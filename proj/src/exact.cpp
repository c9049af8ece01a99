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

#include "speechsum/exact.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>

#include "speechsum/kernels.hpp"

namespace speechsum {

namespace {

// Bounds are sums of single-fact utilities while b is an exact utility;
// both are rounded, so equality is judged with a little slack.
constexpr double kBoundSlack = 1e-9;

struct LevelCounts {
  std::size_t considered = 0;
  std::size_t by_order = 0;
  std::size_t by_bound = 0;
};

// Expands one candidate with every admissible fact. `order` lists fact ids
// by non-increasing single utility; `rank[id]` is the inverse permutation.
void expand(const SpeechCandidate& cand, std::span<const FactId> order,
            std::span<const std::size_t> rank, std::span<const double> single,
            double b, std::size_t m, std::vector<SpeechCandidate>& out,
            LevelCounts& counts) {
  const std::size_t k = order.size();
  const std::size_t last_rank = rank[cand.facts.back()];
  const std::size_t r = m - cand.facts.size();
  counts.considered += k;
  counts.by_order += last_rank + 1;
  for (std::size_t q = last_rank + 1; q < k; ++q) {
    const FactId f = order[q];
    if (!passes_pruning(cand, f, single[f], b, r)) {
      // Later facts have no larger single utility, so they fail as well.
      counts.by_bound += k - q;
      break;
    }
    SpeechCandidate next;
    next.facts = cand.facts;
    next.facts.push_back(f);
    next.u_bound = cand.u_bound + single[f];
    next.last_single_utility = single[f];
    out.push_back(std::move(next));
  }
}

}  // namespace

bool passes_pruning(const SpeechCandidate& cand, FactId f, double fu, double b,
                    std::size_t r) {
  const bool ordered =
      cand.last_single_utility > fu ||
      (cand.last_single_utility == fu && cand.facts.back() < f);
  if (!ordered) return false;
  const double reach = cand.u_bound + static_cast<double>(r) * fu;
  return reach >= b - kBoundSlack * std::max(1.0, std::abs(b));
}

ExactResult exact_summary(const FactCatalog& catalog, double prior,
                          std::size_t m, const ExactOptions& options) {
  ExactResult out;
  const std::size_t k = catalog.size();
  const ExpectationState fresh(catalog.slice(), prior);
  out.base_error = fresh.error();
  m = std::min(m, k);

  out.single_utilities.assign(k, 0.0);
  if (k > 0) {
    std::vector<std::size_t> all(catalog.groups().size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    if (options.parallel) {
      kernels::group_gains_parallel(fresh, catalog, all, out.single_utilities);
    } else {
      kernels::group_gains_serial(fresh, catalog, all, out.single_utilities);
    }
    out.gain_evaluations = k;
  }
  const std::vector<double>& single = out.single_utilities;

  std::vector<SpeechCandidate> level;
  if (m > 0) {
    std::vector<FactId> order(k);
    std::iota(order.begin(), order.end(), FactId{0});
    std::stable_sort(order.begin(), order.end(), [&](FactId a, FactId b) {
      return single[a] > single[b];
    });
    std::vector<std::size_t> rank(k);
    for (std::size_t q = 0; q < k; ++q) rank[order[q]] = q;

    level.reserve(k);
    for (FactId f : order) level.push_back({{f}, single[f], single[f]});

    const double b = options.lower_bound;
    for (std::size_t len = 2; len <= m; ++len) {
      options.deadline.check();
      const long n = static_cast<long>(level.size());
      std::vector<std::vector<SpeechCandidate>> produced(level.size());
      std::vector<LevelCounts> counts(level.size());
      std::atomic<bool> expired{false};
#pragma omp parallel for schedule(dynamic, 16) if (options.parallel && n > 64)
      for (long i = 0; i < n; ++i) {
        if (expired.load(std::memory_order_relaxed)) continue;
        if ((i & 255) == 0 && options.deadline.expired()) {
          expired.store(true, std::memory_order_relaxed);
          continue;
        }
        const auto c = static_cast<std::size_t>(i);
        expand(level[c], order, rank, single, b, m, produced[c], counts[c]);
      }
      if (expired.load()) throw TimeoutError();

      std::vector<SpeechCandidate> next;
      for (std::size_t c = 0; c < level.size(); ++c) {
        out.stats.expansions_considered += counts[c].considered;
        out.stats.pruned_by_order += counts[c].by_order;
        out.stats.pruned_by_bound += counts[c].by_bound;
        for (auto& cand : produced[c]) next.push_back(std::move(cand));
      }
      level = std::move(next);
    }
  }
  options.deadline.check();

  std::vector<std::vector<FactId>> speeches;
  speeches.reserve(level.size());
  for (const auto& cand : level) speeches.push_back(cand.facts);
  const std::vector<double> errors =
      options.parallel ? kernels::speech_errors_parallel(catalog, prior, speeches)
                       : kernels::speech_errors_serial(catalog, prior, speeches);
  out.stats.final_candidates = level.size();
  out.survivor_utilities.reserve(errors.size());
  for (double e : errors) out.survivor_utilities.push_back(out.base_error - e);

  // First strict improvement wins; the empty speech remains only when no
  // candidate survived and no seed was given.
  double best_utility = 0.0;
  const std::vector<FactId>* best = nullptr;
  for (std::size_t c = 0; c < level.size(); ++c) {
    if (best == nullptr || out.survivor_utilities[c] > best_utility) {
      best_utility = out.survivor_utilities[c];
      best = &level[c].facts;
    }
  }
  if (!options.seed.empty()) {
    const double seed_utility =
        out.base_error - kernels::speech_error(catalog, prior, options.seed);
    if (best == nullptr || seed_utility > best_utility) {
      best_utility = seed_utility;
      best = &options.seed;
    }
  }
  if (best != nullptr) {
    out.chosen = *best;
    out.utility = best_utility;
  }
  out.speech = catalog.speech(out.chosen);
  out.survivors = std::move(level);
  return out;
}

ExactResult exact_with_greedy_bound(const FactCatalog& catalog, double prior,
                                    std::size_t m, const Deadline& deadline) {
  const SummaryResult greedy = greedy_summary(catalog, prior, m, nullptr, deadline);
  ExactOptions options;
  options.lower_bound = greedy.utility;
  options.seed = greedy.chosen;
  options.deadline = deadline;
  ExactResult result = exact_summary(catalog, prior, m, options);
  result.gain_evaluations += greedy.gain_evaluations;
  return result;
}

}  // namespace speechsum
