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

#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "speechsum/greedy.hpp"
#include "speechsum/kernels.hpp"
#include "speechsum/pruning.hpp"
#include "speechsum/synth.hpp"

using namespace speechsum;

namespace {

struct AfterWinter {
  Dataset ds = flight_fixture();
  Slice slice{ds, 0, all_rows(ds)};
  FactCatalog catalog = FactCatalog::generate(
      slice, std::vector<ColumnSet>{ColumnSet{}, ColumnSet{0}, ColumnSet{1}, ColumnSet{0, 1}});
  ExpectationState state{slice, 0.0};

  AfterWinter() {
    state.apply(catalog.fact(testing::find_fact(catalog, testing::scope(ds, {{"season", "Winter"}}))));
  }
};

// Cumulative standard normal via its series, independent of erfc.
double phi_series(double x) {
  double term = x;
  double sum = x;
  for (int k = 1; k < 200; ++k) {
    term *= -x * x / 2.0 / k;
    sum += term / (2.0 * k + 1.0);
  }
  return 0.5 + sum / std::sqrt(2.0 * M_PI);
}

}  // namespace

TEST_CASE("group bounds after the Winter fact") {
  const AfterWinter w;
  // Canonical order: {}, {region}, {season}, {region, season}.
  CHECK(group_upper_bound(w.state, w.catalog.group(0)) == 80.0);
  CHECK(group_upper_bound(w.state, w.catalog.group(2)) == 40.0);
  CHECK(group_upper_bound(w.state, w.catalog.group(3)) == 20.0);
  CHECK(group_upper_bound(w.state, w.catalog.group(1)) == 45.0);

  const auto rows = naive::flight_rows();
  const std::vector<naive::Fact> winter = {naive::fact(rows, {std::nullopt, "Winter"})};
  CHECK(naive::residual_by(rows, winter, 0.0, 1).at("Fall") == 10.0);
  CHECK(naive::residual_by(rows, winter, 0.0, 0).at("East") == 5.0);
  CHECK(naive::residual_by(rows, winter, 0.0, 1).at("Summer") == 40.0);
}

TEST_CASE("pruning with the region group as source") {
  const AfterWinter w;
  PruningPlan plan;
  plan.source = {1};
  plan.targets = {2, 3};
  const PrunedGains p = utility_with_pruning(w.state, w.catalog, plan, false);
  CHECK(p.source_max == 25.0);  // North
  CHECK(p.pruned_groups == std::vector<std::size_t>{3});
  CHECK(p.gains.evaluations == 9);

  std::vector<double> full(w.catalog.size());
  std::vector<std::size_t> all{0, 1, 2, 3};
  kernels::group_gains_serial(w.state, w.catalog, all, full);
  for (FactId id = 0; id < w.catalog.size(); ++id) {
    if (p.gains.evaluated[id]) CHECK(p.gains.gains[id] == full[id]);
  }
  CHECK(best_fact(p.gains) != kNoFact);
  CHECK(p.gains.gains[best_fact(p.gains)] == *std::max_element(full.begin(), full.end()));
}

TEST_CASE("the trivial plan reproduces the full scan") {
  const AfterWinter w;
  const PrunedGains p = utility_with_pruning(w.state, w.catalog, trivial_plan(4), true);
  FullScan scan;
  const GainSet g = scan.gains(w.state, w.catalog);
  CHECK(p.gains.gains == g.gains);
  CHECK(p.gains.evaluations == w.catalog.size());
  CHECK(p.pruned_groups.empty());
}

TEST_CASE("prune probability") {
  for (std::size_t m : {1, 2, 7, 100}) CHECK(prune_probability(m, m, 0.25) == 0.5);
  CHECK(prune_probability(2, 8, 0.25) == doctest::Approx(0.85558).epsilon(5e-4 / 0.85558));
  CHECK(prune_probability(2, 8, 0.25) ==
        doctest::Approx(phi_series(0.375 / (0.25 * std::sqrt(2.0)))).epsilon(1e-12));
  CHECK(std::abs(prune_probability(1, 50, 1e6) - 0.5) < 1e-6);
  for (std::size_t a : {1, 3, 10}) {
    for (std::size_t b : {1, 2, 40}) {
      const double p = prune_probability(a, b, 0.3);
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
      CHECK(p + prune_probability(b, a, 0.3) == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("survival probability") {
  const CostParams params{0.25, 1.0, 0.3, 100.0};
  const std::vector<GroupStats> g = {{ColumnSet{}, 2}, {ColumnSet{0}, 8}, {ColumnSet{0, 1}, 8}};
  const std::size_t src[] = {0};
  CHECK(survival_probability(1, src, {}, g, params) == 1.0);
  const std::size_t tgt[] = {1};
  CHECK(survival_probability(1, src, tgt, g, params) == doctest::Approx(0.14442).epsilon(5e-4));
  // The specialization {0,1} is removed with its generalization.
  CHECK(survival_probability(2, src, tgt, g, params) ==
        survival_probability(1, src, tgt, g, params));

  const std::vector<GroupStats> even = {{ColumnSet{}, 4}, {ColumnSet{1}, 4},
                                        {ColumnSet{0}, 4}, {ColumnSet{0, 1}, 4}};
  const std::size_t two_src[] = {0, 1};
  const std::size_t one_tgt[] = {2};
  CHECK(survival_probability(3, two_src, one_tgt, even, params) == 0.25);
}

TEST_CASE("plan cost") {
  const CostParams params{0.25, 1.0, 0.3, 100.0};
  const std::vector<GroupStats> g = {{ColumnSet{}, 4}, {ColumnSet{0}, 4}};
  CHECK(plan_cost(trivial_plan(2), g, params) == 200.0);
  PruningPlan plan{{0}, {1}, 0.0};
  CHECK(plan_cost(plan, g, params) == doctest::Approx(180.0));

  const std::vector<GroupStats> many = {{ColumnSet{}, 1}, {ColumnSet{0}, 3}, {ColumnSet{1}, 9},
                                        {ColumnSet{0, 1}, 27}};
  for (double sigma : {0.01, 0.25, 10.0, 1e6}) {
    CHECK(plan_cost(trivial_plan(4), many, CostParams{sigma, 1.0, 0.3, 50.0}) == 200.0);
  }
}

TEST_CASE("plan enumeration") {
  const CostParams params{0.25, 1.0, 0.3, 100.0};
  const std::vector<GroupStats> one = {{ColumnSet{}, 1}};
  const auto single = enumerate_plans(one, params);
  REQUIRE(single.size() == 1);
  CHECK(single[0].trivial());

  const std::vector<GroupStats> two = {{ColumnSet{}, 1}, {ColumnSet{0}, 3}};
  const auto plans = enumerate_plans(two, params);
  REQUIRE(plans.size() == 2);
  CHECK(plans[0].source == std::vector<std::size_t>{0});
  CHECK(plans[0].targets == std::vector<std::size_t>{1});
  CHECK(plans[1].trivial());

  const std::vector<GroupStats> four = {{ColumnSet{}, 1}, {ColumnSet{0}, 3}, {ColumnSet{1}, 5},
                                        {ColumnSet{0, 1}, 15}};
  const auto p4 = enumerate_plans(four, params);
  CHECK(p4.size() >= 4);
  CHECK(p4.back().trivial());
  CHECK(p4.front().source == std::vector<std::size_t>{0});
  for (const PruningPlan& p : p4) {
    CHECK(p.est_cost == doctest::Approx(plan_cost(p, four, params)));
    // No target specializes an earlier one.
    for (std::size_t i = 0; i < p.targets.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        CHECK_FALSE(four[p.targets[j]].columns.subset_of(four[p.targets[i]].columns));
      }
    }
  }
}

TEST_CASE("groups are ordered by size then columns") {
  const std::vector<GroupStats> g = {{ColumnSet{0, 1}, 4}, {ColumnSet{1}, 2}, {ColumnSet{0}, 2},
                                     {ColumnSet{}, 1}};
  CHECK(groups_by_size(g) == std::vector<std::size_t>{3, 2, 1, 0});
}

TEST_CASE("plan choice") {
  const std::vector<GroupStats> one = {{ColumnSet{}, 1}};
  CHECK(opt_prune(one, CostParams{0.25, 1.0, 0.3, 10.0}).trivial());

  // A tiny group generalizing many large ones is worth using as source.
  const std::vector<GroupStats> skew = {{ColumnSet{}, 1}, {ColumnSet{0}, 2}, {ColumnSet{1}, 100},
                                        {ColumnSet{0, 1}, 200}};
  const PruningPlan best = opt_prune(skew, CostParams{0.25, 1.0, 0.3, 1000.0});
  CHECK_FALSE(best.trivial());
  CHECK(best.source.front() == 0);
  CHECK(best.est_cost < plan_cost(trivial_plan(4), skew, CostParams{0.25, 1.0, 0.3, 1000.0}));

  // Coin-flip pruning does not repay bound costs as high as gain costs.
  CHECK(opt_prune(skew, CostParams{1e6, 1.0, 3.0, 1000.0}).trivial());
  // With cheap bounds, costs approach their p = 1/2 values.
  const auto huge = enumerate_plans(skew, CostParams{1e6, 1.0, 0.3, 1000.0});
  for (const PruningPlan& p : huge) {
    double expect = static_cast<double>(p.source.size()) * 1000.0 +
                    static_cast<double>(p.targets.size()) * 300.0;
    for (std::size_t g = 0; g < skew.size(); ++g) {
      if (std::find(p.source.begin(), p.source.end(), g) != p.source.end()) continue;
      int pairs = 0;
      for (std::size_t t : p.targets) {
        if (skew[t].columns.subset_of(skew[g].columns)) pairs += static_cast<int>(p.source.size());
      }
      expect += std::pow(0.5, pairs) * 1000.0;
    }
    CHECK(p.est_cost == doctest::Approx(expect).epsilon(1e-5));
  }
}

TEST_CASE("naive plan uses the smallest group as source") {
  const std::vector<GroupStats> g = {{ColumnSet{}, 1}, {ColumnSet{0}, 2}, {ColumnSet{1}, 5}};
  const PruningPlan p = naive_plan(g);
  CHECK(p.source == std::vector<std::size_t>{0});
  CHECK(p.targets == std::vector<std::size_t>{1, 2});
  CHECK(naive_plan(std::vector<GroupStats>{{ColumnSet{}, 1}}).trivial());
}

TEST_CASE("pruned scans keep the maximal gain on random plans") {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 60; ++i) {
    const Instance inst = random_instance(rng);
    const FactCatalog c = FactCatalog::from_facts(inst.slice, inst.facts);
    ExpectationState state(inst.slice, inst.prior);
    if (c.size() > 1) state.apply(c.fact(static_cast<FactId>(rng() % c.size())));
    FullScan scan;
    const GainSet full = scan.gains(state, c);
    const double best = full.gains[best_fact(full)];

    const std::size_t n = c.groups().size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    PruningPlan plan;
    const std::size_t cut = 1 + rng() % n;
    plan.source.assign(order.begin(), order.begin() + cut);
    plan.targets.assign(order.begin() + cut, order.end());
    const PrunedGains p = utility_with_pruning(state, c, plan, (i & 1) != 0);
    const FactId pick = best_fact(p.gains);
    REQUIRE(pick != kNoFact);
    CHECK(p.gains.gains[pick] == best);
    for (FactId id = 0; id < c.size(); ++id) {
      if (!p.gains.evaluated[id]) CHECK(full.gains[id] < best);
    }
  }
}

TEST_CASE("optimized pruning halves gain evaluations on a skewed dataset") {
  const Dataset ds = skewed_dataset();
  const Slice slice(ds, 0, all_rows(ds));
  const double prior = ds.target(0).mean();
  auto run = [&](const std::vector<ColumnSet>& groups) {
    const FactCatalog c = FactCatalog::generate(slice, groups);
    FullScan scan;
    PlannedPruning opt(PlannedPruning::Mode::kOptimized, PruningConfig{});
    return std::make_pair(greedy_summary(c, prior, 3, &scan), greedy_summary(c, prior, 3, &opt));
  };
  const auto [base, pruned] = run({ColumnSet{0}, ColumnSet{1}, ColumnSet{0, 1}});
  CHECK(pruned.gain_evaluations * 2 <= base.gain_evaluations);
  CHECK(pruned.utility >= base.utility);
  CHECK(pruned.chosen == base.chosen);

  // The overall fact equals the prior and never prunes as the sole source.
  const auto [base0, pruned0] = run({ColumnSet{}, ColumnSet{0}, ColumnSet{1}, ColumnSet{0, 1}});
  CHECK(pruned0.gain_evaluations == base0.gain_evaluations);
  CHECK(pruned0.utility == base0.utility);
}
