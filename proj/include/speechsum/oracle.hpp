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

// Exhaustive ground truth. Evaluates every fact subset of size <= m with
// speech_utility from scratch; shares nothing with the catalog, the gain
// kernels or the optimizers.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>

#include "speechsum/summary.hpp"

namespace speechsum {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultOracleBudget = 2'000'000;

struct OracleResult {
  Speech speech;
  double utility = 0.0;
  std::uint64_t subsets_evaluated = 0;
};

// Number of subsets of size 0..m of k items, saturating at UINT64_MAX.
std::uint64_t subsets_up_to(std::size_t k, std::size_t m);

// Facts are deduplicated by scope (first occurrence wins). Ties keep the
// earliest subset in size-then-colexicographic order. Throws
// BudgetExceeded if more than `budget` subsets would be evaluated.
OracleResult brute_force_optimal(const Slice& slice, double prior,
                                 std::span<const Fact> facts, std::size_t m,
                                 std::uint64_t budget = kDefaultOracleBudget);

}  // namespace speechsum
