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

#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "speechsum/oracle.hpp"

using namespace speechsum;

TEST_CASE("subset counts") {
  CHECK(subsets_up_to(0, 0) == 1);
  CHECK(subsets_up_to(5, 0) == 1);
  CHECK(subsets_up_to(4, 2) == 1 + 4 + 6);
  CHECK(subsets_up_to(3, 7) == 8);
  CHECK(subsets_up_to(25, 2) == 1 + 25 + 300);
  CHECK(subsets_up_to(1000, 500) == UINT64_MAX);
}

TEST_CASE("oracle on the fixture") {
  const Instance inst = fixture_instance();
  const OracleResult zero = brute_force_optimal(inst.slice, inst.prior, inst.facts, 0);
  CHECK(zero.speech.empty());
  CHECK(zero.utility == 0.0);
  CHECK(zero.subsets_evaluated == 1);

  const auto rows = naive::flight_rows();
  const auto facts = naive::all_facts(rows, 2, true);
  for (std::size_t m = 1; m <= 3; ++m) {
    const OracleResult r = brute_force_optimal(inst.slice, inst.prior, inst.facts, m);
    CHECK(r.utility == doctest::Approx(naive::optimum(rows, facts, 0.0, m)));
    CHECK(r.speech.size() <= m);
    CHECK(r.subsets_evaluated == subsets_up_to(25, m));
    CHECK(speech_utility(inst.slice, inst.prior, r.speech).utility == r.utility);
  }
}

TEST_CASE("oracle with a single fact") {
  const Instance inst = fixture_instance();
  for (std::size_t i = 0; i < inst.facts.size(); ++i) {
    const std::span<const Fact> one(&inst.facts[i], 1);
    const OracleResult r = brute_force_optimal(inst.slice, inst.prior, one, 3);
    CHECK(r.utility == single_fact_utilities(inst.slice, inst.prior, one)[0]);
  }
}

TEST_CASE("oracle budget") {
  const Instance inst = fixture_instance();
  CHECK_THROWS_AS(brute_force_optimal(inst.slice, inst.prior, inst.facts, 2, 100),
                  BudgetExceeded);
  CHECK_NOTHROW(brute_force_optimal(inst.slice, inst.prior, inst.facts, 2, 326));
}

TEST_CASE("oracle agrees with the reference model on random instances") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 40; ++i) {
    const Instance inst = random_instance(rng);
    const testing::NaiveInstance n = testing::to_naive(inst);
    const OracleResult r = brute_force_optimal(inst.slice, inst.prior, inst.facts, inst.m);
    CHECK(r.utility == doctest::Approx(naive::optimum(n.rows, n.facts, inst.prior, inst.m)));
  }
}

TEST_CASE("oracle drops repeated scopes") {
  const Instance inst = fixture_instance();
  std::vector<Fact> facts = {inst.facts[3], inst.facts[3], inst.facts[5]};
  facts[1].value += 100.0;
  const OracleResult r = brute_force_optimal(inst.slice, inst.prior, facts, 2);
  CHECK(r.subsets_evaluated == subsets_up_to(2, 2));
  for (const Fact& f : r.speech.facts()) CHECK(f.value != facts[1].value);
}
