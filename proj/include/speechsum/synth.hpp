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

// Seeded datasets and problem instances for tests, verification and
// benchmarks.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "speechsum/summary.hpp"

namespace speechsum {

// The 4x4 flight-delay grid: regions East, South, West, North by seasons
// Spring, Summer, Fall, Winter; target "delay".
Dataset flight_fixture();

struct RandomSpec {
  std::size_t max_rows = 64;
  std::size_t max_dims = 3;
  std::size_t max_values = 3;
  std::size_t max_facts = 14;
  std::size_t max_m = 3;
};

// A slice over a whole dataset plus candidate facts. The dataset is shared
// so that copies of the instance keep the slice valid.
struct Instance {
  std::shared_ptr<const Dataset> data;
  Slice slice;
  std::vector<Fact> facts;
  std::size_t m = 0;
  double prior = 0.0;
  std::string label;
};

// Fixture slice with all 25 facts, m = 2 and prior 0.
Instance fixture_instance();

// Target values are small integers half of the time so that ties occur.
Instance random_instance(std::mt19937_64& rng, const RandomSpec& spec = {});

// Independent uniform dims d0.. with values v0..; target y is the sum of
// per-value effects plus unit normal noise.
Dataset synthetic_dataset(std::size_t dims, std::size_t values, std::size_t rows,
                          std::uint64_t seed);

// Dim "a" with 2 values carries the signal (y = 10a + noise); dim "b" has
// `b_values` values and none.
Dataset skewed_dataset(std::size_t rows = 10'000, std::size_t b_values = 100,
                       std::uint64_t seed = 7);

// Comma-separated, header first; missing targets become empty fields.
void write_csv(const Dataset& ds, std::ostream& out);

}  // namespace speechsum
