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

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "speechsum/catalog.hpp"
#include "speechsum/errors.hpp"

namespace speechsum {

// Marginal gains for the facts a provider chose to evaluate. Facts with
// evaluated[id] == 0 are treated as not competing for the argmax.
struct GainSet {
  std::vector<double> gains;
  std::vector<std::uint8_t> evaluated;
  std::size_t evaluations = 0;
};

// Supplies per-iteration gains to the greedy loop.
class GainProvider {
 public:
  virtual ~GainProvider() = default;
  virtual GainSet gains(const ExpectationState& state,
                        const FactCatalog& catalog) = 0;
};

// Evaluates every fact.
class FullScan final : public GainProvider {
 public:
  explicit FullScan(bool parallel = true) : parallel_(parallel) {}
  GainSet gains(const ExpectationState& state,
                const FactCatalog& catalog) override;

 private:
  bool parallel_;
};

struct SummaryResult {
  std::vector<FactId> chosen;  // in selection order
  Speech speech;
  double utility = 0.0;
  double base_error = 0.0;
  std::size_t gain_evaluations = 0;
  std::vector<double> step_gains;  // gain of each pick
};

// Picks up to `m` facts one at a time, each maximizing the marginal gain
// over the facts the provider evaluated (ties go to the lower fact id).
// Stops early once the best gain is zero. A null provider means FullScan.
SummaryResult greedy_summary(const FactCatalog& catalog, double prior,
                             std::size_t m, GainProvider* provider = nullptr,
                             const Deadline& deadline = {});

// Argmax with the deterministic tie rule, or kNoFact if nothing evaluated.
FactId best_fact(const GainSet& gains);

}  // namespace speechsum
