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

// Property suites comparing the optimizers against the brute-force oracle.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "speechsum/synth.hpp"

namespace speechsum {

inline constexpr double kVerifyTolerance = 1e-9;

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
  std::optional<double> metric;  // suite-specific, e.g. mean greedy ratio
  std::string metric_name;

  bool passed() const { return failures == 0; }
};

struct VerifyOptions {
  std::size_t instances = 50;
  std::uint64_t seed = 1;
  std::size_t submodularity_triples = 1000;
  bool include_fixture = true;
};

// Fixture (when requested) followed by `instances` seeded random ones.
std::vector<Instance> verification_instances(const VerifyOptions& options);

SuiteResult check_oracle_equivalence(std::span<const Instance> instances);
SuiteResult check_greedy_guarantee(std::span<const Instance> instances);
SuiteResult check_pruning_equivalence(std::span<const Instance> instances);
SuiteResult check_submodularity(std::size_t triples, std::uint64_t seed);
SuiteResult check_permutation_elimination(std::span<const Instance> instances);

std::vector<SuiteResult> run_verification(const VerifyOptions& options);

}  // namespace speechsum
