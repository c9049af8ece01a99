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

#include "speechsum/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace speechsum {

namespace {

// Advances `c` (ascending indices < k) to the next subset of the same size
// in colexicographic order.
bool next_colex(std::vector<std::size_t>& c, std::size_t k) {
  for (std::size_t j = 0; j < c.size(); ++j) {
    const std::size_t limit = j + 1 < c.size() ? c[j + 1] : k;
    if (c[j] + 1 < limit) {
      ++c[j];
      for (std::size_t i = 0; i < j; ++i) c[i] = i;
      return true;
    }
  }
  return false;
}

}  // namespace

std::uint64_t subsets_up_to(std::size_t k, std::size_t m) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 1;  // the empty subset
  std::uint64_t binom = 1;
  for (std::size_t i = 1; i <= std::min(m, k); ++i) {
    // binom(k, i) = binom(k, i-1) * (k-i+1) / i, exact in this order.
    const std::uint64_t num = k - i + 1;
    if (binom > kMax / num) return kMax;
    binom = binom * num / i;
    if (total > kMax - binom) return kMax;
    total += binom;
  }
  return total;
}

OracleResult brute_force_optimal(const Slice& slice, double prior,
                                 std::span<const Fact> facts, std::size_t m,
                                 std::uint64_t budget) {
  std::vector<Fact> unique;
  for (const Fact& f : facts) {
    const bool seen = std::any_of(unique.begin(), unique.end(),
                                  [&](const Fact& g) { return g.scope == f.scope; });
    if (!seen) unique.push_back(f);
  }
  const std::size_t k = unique.size();
  const std::uint64_t total = subsets_up_to(k, m);
  if (total > budget) {
    throw BudgetExceeded("oracle would evaluate " + std::to_string(total) +
                         " subsets (budget " + std::to_string(budget) + ")");
  }

  std::vector<std::vector<std::size_t>> subsets;
  subsets.reserve(static_cast<std::size_t>(total));
  subsets.emplace_back();
  for (std::size_t size = 1; size <= std::min(m, k); ++size) {
    std::vector<std::size_t> c(size);
    std::iota(c.begin(), c.end(), std::size_t{0});
    do {
      subsets.push_back(c);
    } while (next_colex(c, k));
  }

  std::vector<double> utility(subsets.size(), 0.0);
  const long n = static_cast<long>(subsets.size());
#pragma omp parallel for schedule(dynamic, 64) if (n > 256)
  for (long i = 0; i < n; ++i) {
    const auto& subset = subsets[static_cast<std::size_t>(i)];
    std::vector<Fact> chosen;
    chosen.reserve(subset.size());
    for (std::size_t idx : subset) chosen.push_back(unique[idx]);
    utility[static_cast<std::size_t>(i)] =
        speech_utility(slice, prior, Speech(std::move(chosen))).utility;
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < subsets.size(); ++i) {
    if (utility[i] > utility[best]) best = i;
  }
  OracleResult out;
  std::vector<Fact> chosen;
  for (std::size_t idx : subsets[best]) chosen.push_back(unique[idx]);
  out.speech = Speech(std::move(chosen));
  out.utility = utility[best];
  out.subsets_evaluated = subsets.size();
  return out;
}

}  // namespace speechsum
