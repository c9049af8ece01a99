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

#include "speechsum/greedy.hpp"

#include <numeric>

#include "speechsum/kernels.hpp"

namespace speechsum {

GainSet FullScan::gains(const ExpectationState& state,
                        const FactCatalog& catalog) {
  GainSet out;
  out.gains.assign(catalog.size(), 0.0);
  out.evaluated.assign(catalog.size(), 1);
  out.evaluations = catalog.size();
  std::vector<std::size_t> all(catalog.groups().size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  if (parallel_) {
    kernels::group_gains_parallel(state, catalog, all, out.gains);
  } else {
    kernels::group_gains_serial(state, catalog, all, out.gains);
  }
  return out;
}

FactId best_fact(const GainSet& gains) {
  FactId best = kNoFact;
  for (FactId f = 0; f < gains.gains.size(); ++f) {
    if (!gains.evaluated[f]) continue;
    if (best == kNoFact || gains.gains[f] > gains.gains[best]) best = f;
  }
  return best;
}

SummaryResult greedy_summary(const FactCatalog& catalog, double prior,
                             std::size_t m, GainProvider* provider,
                             const Deadline& deadline) {
  FullScan full;
  if (provider == nullptr) provider = &full;

  ExpectationState state(catalog.slice(), prior);
  SummaryResult result;
  result.base_error = state.error();

  for (std::size_t i = 0; i < m; ++i) {
    deadline.check();
    const GainSet gains = provider->gains(state, catalog);
    result.gain_evaluations += gains.evaluations;
    const FactId pick = best_fact(gains);
    if (pick == kNoFact || !(gains.gains[pick] > 0.0)) break;
    result.chosen.push_back(pick);
    result.step_gains.push_back(gains.gains[pick]);
    state.apply_at(catalog.positions(pick), catalog.fact(pick).value);
  }

  result.speech = catalog.speech(result.chosen);
  result.utility = result.base_error - state.error();
  return result;
}

}  // namespace speechsum
