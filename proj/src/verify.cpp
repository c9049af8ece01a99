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

#include "speechsum/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "speechsum/exact.hpp"
#include "speechsum/greedy.hpp"
#include "speechsum/oracle.hpp"
#include "speechsum/pruning.hpp"

namespace speechsum {

namespace {

bool close(double a, double b) {
  return std::abs(a - b) <= kVerifyTolerance * std::max(1.0, std::abs(b));
}

void fail(SuiteResult& r, const std::string& what) {
  if (r.failures++ == 0) r.first_failure = what;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

double utility_of(const Instance& inst, const std::vector<std::size_t>& ids) {
  std::vector<Fact> chosen;
  for (std::size_t i : ids) chosen.push_back(inst.facts[i]);
  return speech_utility(inst.slice, inst.prior, Speech(std::move(chosen))).utility;
}

std::vector<std::size_t> random_subset(std::mt19937_64& rng,
                                       const std::vector<std::size_t>& pool) {
  std::vector<std::size_t> out;
  for (std::size_t x : pool) {
    if (rng() & 1U) out.push_back(x);
  }
  return out;
}

}  // namespace

std::vector<Instance> verification_instances(const VerifyOptions& options) {
  std::vector<Instance> out;
  if (options.include_fixture) out.push_back(fixture_instance());
  std::mt19937_64 rng(options.seed);
  for (std::size_t i = 0; i < options.instances; ++i) out.push_back(random_instance(rng));
  return out;
}

SuiteResult check_oracle_equivalence(std::span<const Instance> instances) {
  SuiteResult r;
  r.name = "oracle-equivalence";
  for (const Instance& inst : instances) {
    ++r.cases;
    const FactCatalog catalog = FactCatalog::from_facts(inst.slice, inst.facts);
    const ExactResult exact = exact_with_greedy_bound(catalog, inst.prior, inst.m);
    const OracleResult oracle = brute_force_optimal(inst.slice, inst.prior, inst.facts, inst.m);
    if (!close(exact.utility, oracle.utility)) {
      fail(r, inst.label + ": exact " + num(exact.utility) + " vs oracle " +
                  num(oracle.utility));
    }
  }
  return r;
}

SuiteResult check_greedy_guarantee(std::span<const Instance> instances) {
  SuiteResult r;
  r.name = "greedy-guarantee";
  r.metric_name = "mean greedy/oracle";
  const double factor = 1.0 - std::exp(-1.0);
  double ratio_sum = 0.0;
  for (const Instance& inst : instances) {
    ++r.cases;
    const FactCatalog catalog = FactCatalog::from_facts(inst.slice, inst.facts);
    const SummaryResult greedy = greedy_summary(catalog, inst.prior, inst.m);
    const OracleResult oracle = brute_force_optimal(inst.slice, inst.prior, inst.facts, inst.m);
    if (greedy.utility < factor * oracle.utility - kVerifyTolerance) {
      fail(r, inst.label + ": greedy " + num(greedy.utility) + " below bound for oracle " +
                  num(oracle.utility));
    }
    if (greedy.utility > oracle.utility + kVerifyTolerance) {
      fail(r, inst.label + ": greedy " + num(greedy.utility) + " exceeds oracle " +
                  num(oracle.utility));
    }
    ratio_sum += oracle.utility > 0.0 ? greedy.utility / oracle.utility : 1.0;
  }
  if (r.cases > 0) r.metric = ratio_sum / static_cast<double>(r.cases);
  return r;
}

SuiteResult check_pruning_equivalence(std::span<const Instance> instances) {
  SuiteResult r;
  r.name = "pruning-equivalence";
  for (const Instance& inst : instances) {
    ++r.cases;
    const FactCatalog catalog = FactCatalog::from_facts(inst.slice, inst.facts);
    FullScan full;
    PlannedPruning naive(PlannedPruning::Mode::kNaive, PruningConfig{});
    PlannedPruning opt(PlannedPruning::Mode::kOptimized, PruningConfig{});
    const SummaryResult base = greedy_summary(catalog, inst.prior, inst.m, &full);
    const SummaryResult runs[] = {greedy_summary(catalog, inst.prior, inst.m, &naive),
                                  greedy_summary(catalog, inst.prior, inst.m, &opt)};
    const char* names[] = {"naive", "optimized"};
    for (int v = 0; v < 2; ++v) {
      const SummaryResult& run = runs[v];
      bool same = run.step_gains.size() == base.step_gains.size() &&
                  close(run.utility, base.utility);
      for (std::size_t i = 0; same && i < run.step_gains.size(); ++i) {
        same = close(run.step_gains[i], base.step_gains[i]);
      }
      if (!same) {
        fail(r, inst.label + ": " + names[v] + " plan utility " + num(run.utility) +
                    " vs unpruned " + num(base.utility));
      }
    }
  }
  return r;
}

SuiteResult check_submodularity(std::size_t triples, std::uint64_t seed) {
  SuiteResult r;
  r.name = "submodularity";
  std::mt19937_64 rng(seed);
  std::vector<Instance> pool;
  for (int i = 0; i < 40; ++i) pool.push_back(random_instance(rng));
  for (std::size_t t = 0; t < triples; ++t) {
    const Instance& inst = pool[rng() % pool.size()];
    ++r.cases;
    const std::size_t k = inst.facts.size();
    std::vector<std::size_t> all(k);
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::shuffle(all.begin(), all.end(), rng);
    const std::size_t f = all.back();
    all.pop_back();
    const std::vector<std::size_t> f2 = random_subset(rng, all);
    const std::vector<std::size_t> f1 = random_subset(rng, f2);
    std::vector<std::size_t> f1f = f1;
    std::vector<std::size_t> f2f = f2;
    f1f.push_back(f);
    f2f.push_back(f);

    const double u1 = utility_of(inst, f1);
    const double u2 = utility_of(inst, f2);
    const double gain1 = utility_of(inst, f1f) - u1;
    const double gain2 = utility_of(inst, f2f) - u2;
    if (gain1 < gain2 - kVerifyTolerance) {
      fail(r, inst.label + ": gain " + num(gain1) + " on subset < " + num(gain2) +
                  " on superset");
    }
    if (u2 < u1 - kVerifyTolerance) {
      fail(r, inst.label + ": utility " + num(u2) + " of superset < " + num(u1));
    }
  }
  return r;
}

SuiteResult check_permutation_elimination(std::span<const Instance> instances) {
  SuiteResult r;
  r.name = "permutation-elimination";
  for (const Instance& inst : instances) {
    ++r.cases;
    const FactCatalog catalog = FactCatalog::from_facts(inst.slice, inst.facts);
    const SummaryResult greedy = greedy_summary(catalog, inst.prior, inst.m);
    ExactOptions options;
    options.lower_bound = greedy.utility;
    options.parallel = false;
    const ExactResult exact = exact_summary(catalog, inst.prior, inst.m, options);
    const std::vector<double>& single = exact.single_utilities;
    const std::size_t k = catalog.size();
    const std::size_t m = std::min(inst.m, k);

    // Single utilities must agree with from-scratch evaluation.
    for (FactId id = 0; id < k; ++id) {
      const double expect =
          speech_utility(inst.slice, inst.prior, catalog.speech(std::span(&id, 1))).utility;
      if (!close(single[id], expect)) {
        fail(r, inst.label + ": single utility of fact " + std::to_string(id) + " is " +
                    num(single[id]) + ", expected " + num(expect));
      }
    }

    // Every size-m subset once, in rank order, kept iff each extension
    // could still reach the bound.
    std::vector<FactId> order(k);
    std::iota(order.begin(), order.end(), FactId{0});
    std::sort(order.begin(), order.end(), [&](FactId a, FactId b) {
      return single[a] != single[b] ? single[a] > single[b] : a < b;
    });
    const double b = options.lower_bound;
    const double slack = 1e-9 * std::max(1.0, std::abs(b));
    std::set<std::vector<FactId>> expected;
    if (m > 0) {
      std::vector<std::size_t> pos(m);
      std::iota(pos.begin(), pos.end(), std::size_t{0});
      while (true) {
        bool keep = true;
        double prefix = single[order[pos[0]]];
        for (std::size_t j = 1; j < m && keep; ++j) {
          const double fu = single[order[pos[j]]];
          keep = prefix + static_cast<double>(m - j) * fu >= b - slack;
          prefix += fu;
        }
        if (keep) {
          std::vector<FactId> ids;
          for (std::size_t p : pos) ids.push_back(order[p]);
          expected.insert(ids);
        }
        std::size_t j = m;
        while (j > 0 && pos[j - 1] == k - m + (j - 1)) --j;
        if (j == 0) break;
        ++pos[j - 1];
        for (std::size_t i = j; i < m; ++i) pos[i] = pos[i - 1] + 1;
      }
    }

    std::set<std::vector<FactId>> seen;
    for (const SpeechCandidate& cand : exact.survivors) {
      if (!seen.insert(cand.facts).second) {
        fail(r, inst.label + ": candidate generated twice");
      }
    }
    if (seen != expected) {
      fail(r, inst.label + ": " + std::to_string(seen.size()) + " survivors, expected " +
                  std::to_string(expected.size()));
    }
  }
  return r;
}

std::vector<SuiteResult> run_verification(const VerifyOptions& options) {
  const std::vector<Instance> instances = verification_instances(options);
  std::vector<SuiteResult> out;
  out.push_back(check_oracle_equivalence(instances));
  out.push_back(check_greedy_guarantee(instances));
  out.push_back(check_pruning_equivalence(instances));
  out.push_back(check_submodularity(options.submodularity_triples, options.seed + 1));
  out.push_back(check_permutation_elimination(instances));
  return out;
}

}  // namespace speechsum
