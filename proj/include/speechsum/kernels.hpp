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

// Data-parallel inner loops. Each kernel has a serial reference and an
// OpenMP version; both accumulate every sum in slice-row order, so results
// are bit-identical regardless of thread count.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "speechsum/catalog.hpp"

namespace speechsum::kernels {

// Marginal gains of every fact in the listed groups, written to
// gains[fact id]. Other entries are left untouched.
void group_gains_serial(const ExpectationState& state,
                        const FactCatalog& catalog,
                        std::span<const std::size_t> groups,
                        std::span<double> gains);
void group_gains_parallel(const ExpectationState& state,
                          const FactCatalog& catalog,
                          std::span<const std::size_t> groups,
                          std::span<double> gains);

// Per-combination sums of current residuals |e - v| for one group.
std::vector<double> combination_residuals(const ExpectationState& state,
                                          const FactGroup& group);

// Maximum per-combination residual sum for each listed group.
std::vector<double> group_bounds_serial(const ExpectationState& state,
                                        const FactCatalog& catalog,
                                        std::span<const std::size_t> groups);
std::vector<double> group_bounds_parallel(const ExpectationState& state,
                                          const FactCatalog& catalog,
                                          std::span<const std::size_t> groups);

// Accumulated deviation of the speech formed by `ids`.
double speech_error(const FactCatalog& catalog, double prior,
                    std::span<const FactId> ids);

// speech_error for a batch of candidate speeches.
std::vector<double> speech_errors_serial(
    const FactCatalog& catalog, double prior,
    std::span<const std::vector<FactId>> speeches);
std::vector<double> speech_errors_parallel(
    const FactCatalog& catalog, double prior,
    std::span<const std::vector<FactId>> speeches);

// Number of OpenMP threads available to parallel kernels (1 without
// OpenMP).
int max_threads();
void set_threads(int threads);

}  // namespace speechsum::kernels
