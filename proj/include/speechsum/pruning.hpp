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

// Fact-group pruning for the greedy loop.
//
// A plan names source groups, whose gains are computed first, and an
// ordered list of target groups. The best source gain is compared against
// each live target's residual bound (the largest per-combination sum of
// |e - v|, which no fact in the target or any specialization of it can
// exceed); dominated targets are dropped along with their
// specializations. A cost model over the number of combinations per group
// picks the plan.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "speechsum/catalog.hpp"
#include "speechsum/config.hpp"
#include "speechsum/greedy.hpp"

namespace speechsum {

struct CostParams {
  double sigma = 0.25;
  double w_u = 1.0;  // per-row cost of computing gains
  double w_d = 0.3;  // per-row cost of computing a residual bound
  double n = 0.0;    // rows in the slice

  static CostParams from(const PruningConfig& cfg, double rows) {
    return {cfg.sigma, cfg.w_u, cfg.w_d, rows};
  }
};

// Group ids index into the GroupStats span (equivalently FactCatalog
// groups).
struct PruningPlan {
  std::vector<std::size_t> source;
  std::vector<std::size_t> targets;
  double est_cost = 0.0;

  bool trivial() const { return targets.empty(); }
};

// Largest per-combination residual sum of the group.
double group_upper_bound(const ExpectationState& state, const FactGroup& group);

// P(u_s > u_t) for u ~ N(1/M, sigma^2).
double prune_probability(std::size_t m_s, std::size_t m_t, double sigma);

// Probability that group `g` escapes pruning by every (source, target)
// pair whose target generalizes it.
double survival_probability(std::size_t g, std::span<const std::size_t> source,
                            std::span<const std::size_t> targets,
                            std::span<const GroupStats> groups,
                            const CostParams& params);

double plan_cost(const PruningPlan& plan, std::span<const GroupStats> groups,
                 const CostParams& params);

// Groups by ascending M, ties broken by lexicographic column order.
std::vector<std::size_t> groups_by_size(std::span<const GroupStats> groups);

// Candidate plans: for every prefix of groups_by_size as source, targets
// are added greedily by expected number of groups removed. The trivial
// plan is always last. Costs are filled in.
std::vector<PruningPlan> enumerate_plans(std::span<const GroupStats> groups,
                                         const CostParams& params);

// Cheapest candidate; ties prefer fewer sources, then fewer targets.
PruningPlan opt_prune(std::span<const GroupStats> groups,
                      const CostParams& params);

// Every group is a source; nothing is pruned.
PruningPlan trivial_plan(std::size_t n_groups);

// Smallest group as the only source, every other group a target in
// ascending-M order.
PruningPlan naive_plan(std::span<const GroupStats> groups);

struct PrunedGains {
  GainSet gains;
  double source_max = 0.0;
  std::vector<std::size_t> pruned_groups;  // ascending group id
};

PrunedGains utility_with_pruning(const ExpectationState& state,
                                 const FactCatalog& catalog,
                                 const PruningPlan& plan,
                                 bool parallel = true);

// Gain provider for greedy_summary. The plan is fixed on first use from the
// catalog's group sizes and reused for every iteration.
class PlannedPruning final : public GainProvider {
 public:
  enum class Mode { kNaive, kOptimized };

  PlannedPruning(Mode mode, PruningConfig config, bool parallel = true)
      : mode_(mode), config_(config), parallel_(parallel) {}

  GainSet gains(const ExpectationState& state,
                const FactCatalog& catalog) override;

  const PruningPlan& plan() const { return plan_; }

 private:
  Mode mode_;
  PruningConfig config_;
  bool parallel_;
  bool planned_ = false;
  PruningPlan plan_;
};

}  // namespace speechsum
