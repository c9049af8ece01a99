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

#include "speechsum/pruning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "speechsum/kernels.hpp"

namespace speechsum {

namespace {

bool contains(std::span<const std::size_t> ids, std::size_t g) {
  return std::find(ids.begin(), ids.end(), g) != ids.end();
}

// Probability that some source dominates target t.
double any_source_prunes(std::size_t t, std::span<const std::size_t> source,
                         std::span<const GroupStats> groups, double sigma) {
  double escape = 1.0;
  for (std::size_t s : source) {
    escape *= 1.0 - prune_probability(groups[s].m_count, groups[t].m_count, sigma);
  }
  return 1.0 - escape;
}

}  // namespace

double group_upper_bound(const ExpectationState& state, const FactGroup& group) {
  const std::vector<double> sums = kernels::combination_residuals(state, group);
  double best = 0.0;
  for (double s : sums) best = std::max(best, s);
  return best;
}

double prune_probability(std::size_t m_s, std::size_t m_t, double sigma) {
  // The difference of the two normals has variance 2 sigma^2.
  const double diff = 1.0 / static_cast<double>(m_s) - 1.0 / static_cast<double>(m_t);
  const double z = diff / (sigma * std::sqrt(2.0));
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

double survival_probability(std::size_t g, std::span<const std::size_t> source,
                            std::span<const std::size_t> targets,
                            std::span<const GroupStats> groups,
                            const CostParams& params) {
  double survive = 1.0;
  for (std::size_t t : targets) {
    if (!groups[t].columns.subset_of(groups[g].columns)) continue;
    for (std::size_t s : source) {
      survive *= 1.0 - prune_probability(groups[s].m_count, groups[t].m_count,
                                         params.sigma);
    }
  }
  return survive;
}

double plan_cost(const PruningPlan& plan, std::span<const GroupStats> groups,
                 const CostParams& params) {
  const double c_u = params.w_u * params.n;
  const double c_d = params.w_d * params.n;
  double cost = static_cast<double>(plan.source.size()) * c_u +
                static_cast<double>(plan.targets.size()) * c_d;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (contains(plan.source, g)) continue;
    cost += survival_probability(g, plan.source, plan.targets, groups, params) * c_u;
  }
  return cost;
}

std::vector<std::size_t> groups_by_size(std::span<const GroupStats> groups) {
  std::vector<std::size_t> order(groups.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (groups[a].m_count != groups[b].m_count) {
      return groups[a].m_count < groups[b].m_count;
    }
    return lexicographic_less(groups[a].columns, groups[b].columns);
  });
  return order;
}

PruningPlan trivial_plan(std::size_t n_groups) {
  PruningPlan plan;
  plan.source.resize(n_groups);
  std::iota(plan.source.begin(), plan.source.end(), std::size_t{0});
  return plan;
}

std::vector<PruningPlan> enumerate_plans(std::span<const GroupStats> groups,
                                         const CostParams& params) {
  std::vector<PruningPlan> plans;
  const std::vector<std::size_t> order = groups_by_size(groups);

  for (std::size_t prefix = 1; prefix < order.size(); ++prefix) {
    const std::vector<std::size_t> source(order.begin(), order.begin() + prefix);
    std::vector<std::size_t> left(order.begin() + prefix, order.end());
    std::vector<std::size_t> targets;
    while (!left.empty()) {
      std::size_t pick = left.front();
      double pick_value = -1.0;
      for (std::size_t t : left) {
        const auto removable = std::count_if(left.begin(), left.end(), [&](std::size_t l) {
          return groups[t].columns.subset_of(groups[l].columns);
        });
        const double value = any_source_prunes(t, source, groups, params.sigma) *
                             static_cast<double>(removable);
        if (value > pick_value) {
          pick = t;
          pick_value = value;
        }
      }
      targets.push_back(pick);
      plans.push_back(PruningPlan{source, targets, 0.0});
      std::erase_if(left, [&](std::size_t l) {
        return groups[pick].columns.subset_of(groups[l].columns);
      });
    }
  }
  plans.push_back(trivial_plan(groups.size()));
  for (PruningPlan& plan : plans) plan.est_cost = plan_cost(plan, groups, params);
  return plans;
}

PruningPlan opt_prune(std::span<const GroupStats> groups,
                      const CostParams& params) {
  std::vector<PruningPlan> plans = enumerate_plans(groups, params);
  std::size_t best = 0;
  for (std::size_t i = 1; i < plans.size(); ++i) {
    const PruningPlan& a = plans[i];
    const PruningPlan& b = plans[best];
    if (a.est_cost != b.est_cost) {
      if (a.est_cost < b.est_cost) best = i;
      continue;
    }
    if (a.source.size() != b.source.size()) {
      if (a.source.size() < b.source.size()) best = i;
      continue;
    }
    if (a.targets.size() < b.targets.size()) best = i;
  }
  return std::move(plans[best]);
}

PruningPlan naive_plan(std::span<const GroupStats> groups) {
  if (groups.size() <= 1) return trivial_plan(groups.size());
  const std::vector<std::size_t> order = groups_by_size(groups);
  PruningPlan plan;
  plan.source = {order.front()};
  plan.targets.assign(order.begin() + 1, order.end());
  return plan;
}

PrunedGains utility_with_pruning(const ExpectationState& state,
                                 const FactCatalog& catalog,
                                 const PruningPlan& plan, bool parallel) {
  const std::size_t n_groups = catalog.groups().size();
  PrunedGains out;
  out.gains.gains.assign(catalog.size(), 0.0);
  out.gains.evaluated.assign(catalog.size(), 0);

  auto compute = [&](std::span<const std::size_t> ids) {
    if (parallel) {
      kernels::group_gains_parallel(state, catalog, ids, out.gains.gains);
    } else {
      kernels::group_gains_serial(state, catalog, ids, out.gains.gains);
    }
    for (std::size_t g : ids) {
      const FactGroup& group = catalog.group(g);
      for (FactId f = group.first; f < group.first + group.count; ++f) {
        out.gains.evaluated[f] = 1;
        ++out.gains.evaluations;
      }
    }
  };

  compute(plan.source);
  bool any_source_fact = false;
  for (std::size_t s : plan.source) {
    const FactGroup& group = catalog.group(s);
    for (FactId f = group.first; f < group.first + group.count; ++f) {
      if (!any_source_fact || out.gains.gains[f] > out.source_max) {
        out.source_max = out.gains.gains[f];
      }
      any_source_fact = true;
    }
  }

  std::vector<std::uint8_t> live(n_groups, 1);
  if (any_source_fact && !plan.targets.empty()) {
    // Bounds do not depend on earlier pruning, so they may be computed up
    // front; only the order of the dominance checks matters.
    std::vector<double> bounds;
    if (parallel) bounds = kernels::group_bounds_parallel(state, catalog, plan.targets);
    for (std::size_t i = 0; i < plan.targets.size(); ++i) {
      const std::size_t t = plan.targets[i];
      if (!live[t]) continue;
      const double u = parallel ? bounds[i] : group_upper_bound(state, catalog.group(t));
      if (!(out.source_max > u)) continue;
      for (std::size_t g = 0; g < n_groups; ++g) {
        if (catalog.group(t).columns.subset_of(catalog.group(g).columns)) live[g] = 0;
      }
    }
  }

  std::vector<std::size_t> remaining;
  for (std::size_t g = 0; g < n_groups; ++g) {
    if (contains(plan.source, g)) continue;
    if (live[g]) {
      remaining.push_back(g);
    } else {
      out.pruned_groups.push_back(g);
    }
  }
  compute(remaining);
  return out;
}

GainSet PlannedPruning::gains(const ExpectationState& state,
                              const FactCatalog& catalog) {
  if (!planned_) {
    const std::vector<GroupStats> stats = catalog.group_stats();
    if (mode_ == Mode::kNaive) {
      plan_ = naive_plan(stats);
    } else {
      plan_ = opt_prune(stats, CostParams::from(config_, static_cast<double>(
                                                             catalog.slice().size())));
    }
    planned_ = true;
  }
  return utility_with_pruning(state, catalog, plan_, parallel_).gains;
}

}  // namespace speechsum
