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

#include "speechsum/kernels.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace speechsum::kernels {

namespace {

// Gains for one group in a single pass over the slice.
void accumulate_group(const ExpectationState& state, const FactCatalog& catalog,
                      std::size_t g, std::span<double> gains) {
  const FactGroup& group = catalog.group(g);
  if (group.count == 0) return;
  const auto values = state.slice().values();
  const auto expect = state.expectations();
  std::vector<double> local(group.count, 0.0);
  for (std::size_t pos = 0; pos < values.size(); ++pos) {
    const FactId f = group.fact_of_combo[group.combo_of_row[pos]];
    if (f == kNoFact) continue;
    local[f - group.first] +=
        row_gain(expect[pos], catalog.fact(f).value, values[pos]);
  }
  std::copy(local.begin(), local.end(), gains.begin() + group.first);
}

double max_combination_residual(const ExpectationState& state,
                                const FactGroup& group) {
  const std::vector<double> sums = combination_residuals(state, group);
  double best = 0.0;
  for (double s : sums) best = std::max(best, s);
  return best;
}

}  // namespace

void group_gains_serial(const ExpectationState& state,
                        const FactCatalog& catalog,
                        std::span<const std::size_t> groups,
                        std::span<double> gains) {
  for (std::size_t g : groups) accumulate_group(state, catalog, g, gains);
}

void group_gains_parallel(const ExpectationState& state,
                          const FactCatalog& catalog,
                          std::span<const std::size_t> groups,
                          std::span<double> gains) {
  const long n = static_cast<long>(groups.size());
#pragma omp parallel for schedule(dynamic, 1) if (n > 1)
  for (long i = 0; i < n; ++i) {
    accumulate_group(state, catalog, groups[static_cast<std::size_t>(i)], gains);
  }
}

std::vector<double> combination_residuals(const ExpectationState& state,
                                          const FactGroup& group) {
  std::vector<double> sums(group.fact_of_combo.size(), 0.0);
  const auto values = state.slice().values();
  const auto expect = state.expectations();
  for (std::size_t pos = 0; pos < values.size(); ++pos) {
    sums[group.combo_of_row[pos]] += std::abs(expect[pos] - values[pos]);
  }
  return sums;
}

std::vector<double> group_bounds_serial(const ExpectationState& state,
                                        const FactCatalog& catalog,
                                        std::span<const std::size_t> groups) {
  std::vector<double> out(groups.size(), 0.0);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    out[i] = max_combination_residual(state, catalog.group(groups[i]));
  }
  return out;
}

std::vector<double> group_bounds_parallel(const ExpectationState& state,
                                          const FactCatalog& catalog,
                                          std::span<const std::size_t> groups) {
  std::vector<double> out(groups.size(), 0.0);
  const long n = static_cast<long>(groups.size());
#pragma omp parallel for schedule(dynamic, 1) if (n > 1)
  for (long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = max_combination_residual(state, catalog.group(groups[k]));
  }
  return out;
}

double speech_error(const FactCatalog& catalog, double prior,
                    std::span<const FactId> ids) {
  const auto values = catalog.slice().values();
  double total = 0.0;
  for (std::size_t pos = 0; pos < values.size(); ++pos) {
    const double v = values[pos];
    double best = std::abs(prior - v);
    for (FactId id : ids) {
      const FactGroup& g = catalog.group(catalog.group_of(id));
      if (g.fact_of_combo[g.combo_of_row[pos]] != id) continue;
      best = std::min(best, std::abs(catalog.fact(id).value - v));
    }
    total += best;
  }
  return total;
}

std::vector<double> speech_errors_serial(
    const FactCatalog& catalog, double prior,
    std::span<const std::vector<FactId>> speeches) {
  std::vector<double> out(speeches.size(), 0.0);
  for (std::size_t i = 0; i < speeches.size(); ++i) {
    out[i] = speech_error(catalog, prior, speeches[i]);
  }
  return out;
}

std::vector<double> speech_errors_parallel(
    const FactCatalog& catalog, double prior,
    std::span<const std::vector<FactId>> speeches) {
  std::vector<double> out(speeches.size(), 0.0);
  const long n = static_cast<long>(speeches.size());
#pragma omp parallel for schedule(static) if (n > 64)
  for (long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = speech_error(catalog, prior, speeches[k]);
  }
  return out;
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

}  // namespace speechsum::kernels
