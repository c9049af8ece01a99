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

// Optimal speech search by level-wise expansion. Candidates list facts by
// non-increasing single-fact utility (ties by ascending id), so each fact
// set is enumerated once; a candidate is dropped when the sum of its
// members' single-fact utilities, plus the remaining additions times the
// newest fact's single utility, falls below a known lower bound.

#pragma once

#include <cstddef>
#include <vector>

#include "speechsum/catalog.hpp"
#include "speechsum/errors.hpp"
#include "speechsum/greedy.hpp"

namespace speechsum {

struct SpeechCandidate {
  std::vector<FactId> facts;
  double u_bound = 0.0;              // sum of members' single-fact utilities
  double last_single_utility = 0.0;  // of facts.back()
};

// True if appending fact `f` (single utility `fu`) to `cand` keeps the
// member order and the expansion can still reach `b`. `r` counts the
// additions still to come, including `f`.
bool passes_pruning(const SpeechCandidate& cand, FactId f, double fu, double b,
                    std::size_t r);

struct ExactOptions {
  double lower_bound = 0.0;
  // Speech competing in the final argmax, typically the greedy result.
  std::vector<FactId> seed;
  bool parallel = true;
  Deadline deadline;
};

struct ExactStats {
  std::size_t expansions_considered = 0;
  std::size_t pruned_by_order = 0;
  std::size_t pruned_by_bound = 0;
  std::size_t final_candidates = 0;
};

struct ExactResult : SummaryResult {
  ExactStats stats;
  std::vector<SpeechCandidate> survivors;
  std::vector<double> survivor_utilities;
  std::vector<double> single_utilities;  // per fact id
};

// Throws TimeoutError when the deadline passes.
ExactResult exact_summary(const FactCatalog& catalog, double prior,
                          std::size_t m, const ExactOptions& options = {});

// Greedy first, then exact search bounded and seeded by the greedy result.
ExactResult exact_with_greedy_bound(const FactCatalog& catalog, double prior,
                                    std::size_t m,
                                    const Deadline& deadline = {});

}  // namespace speechsum
