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

#include <numeric>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "speechsum/catalog.hpp"
#include "speechsum/kernels.hpp"
#include "speechsum/synth.hpp"

using namespace speechsum;

namespace {

std::vector<ColumnSet> every_group(std::size_t dims) {
  std::vector<ColumnSet> out;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << dims); ++b) out.push_back(ColumnSet::from_bits(b));
  return out;
}

std::vector<std::size_t> all_groups(const FactCatalog& c) {
  std::vector<std::size_t> ids(c.groups().size());
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  return ids;
}

}  // namespace

TEST_CASE("catalog groups follow canonical column order") {
  const Dataset ds = flight_fixture();
  const Slice slice(ds, 0, all_rows(ds));
  const std::vector<ColumnSet> groups = {ColumnSet{0, 1}, ColumnSet{1}, ColumnSet{}, ColumnSet{0}};
  const FactCatalog c = FactCatalog::generate(slice, groups);
  REQUIRE(c.groups().size() == 4);
  CHECK(c.group(0).columns == ColumnSet{});
  CHECK(c.group(1).columns == ColumnSet{0});
  CHECK(c.group(2).columns == ColumnSet{1});
  CHECK(c.group(3).columns == ColumnSet{0, 1});
  CHECK(c.size() == 25);
  for (FactId id = 0; id < c.size(); ++id) {
    const FactGroup& g = c.group(c.group_of(id));
    CHECK(id >= g.first);
    CHECK(id < g.first + g.count);
    CHECK(c.positions(id).size() == c.fact(id).support);
  }
}

TEST_CASE("from_facts drops repeated scopes and keeps given values") {
  const Dataset ds = flight_fixture();
  const Slice slice(ds, 0, all_rows(ds));
  const Scope winter = testing::scope(ds, {{"season", "Winter"}});
  const std::vector<Fact> facts = {{winter, 99.0, 0}, {winter, 1.0, 0}, {Scope(), 3.0, 0}};
  const FactCatalog c = FactCatalog::from_facts(slice, facts);
  CHECK(c.size() == 2);
  const FactId w = testing::find_fact(c, winter);
  REQUIRE(w != kNoFact);
  CHECK(c.fact(w).value == 99.0);
  CHECK(c.positions(w).size() == 4);
}

TEST_CASE("full-scan gains match per-fact marginal gains") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 30; ++i) {
    const Instance inst = random_instance(rng);
    const FactCatalog c = FactCatalog::from_facts(inst.slice, inst.facts);
    ExpectationState state(inst.slice, inst.prior);
    state.apply(c.fact(0));
    std::vector<double> gains(c.size(), 0.0);
    kernels::group_gains_serial(state, c, all_groups(c), gains);
    for (FactId id = 0; id < c.size(); ++id) {
      CHECK(gains[id] == doctest::Approx(marginal_gain(state, c.fact(id))).epsilon(1e-12));
    }
  }
}

TEST_CASE("parallel kernels equal their serial references") {
  const int saved = kernels::max_threads();
  kernels::set_threads(4);
  const Dataset ds = synthetic_dataset(3, 8, 5000, 17);
  const Slice slice(ds, 0, all_rows(ds));
  const FactCatalog c = FactCatalog::generate(slice, every_group(3));
  ExpectationState state(slice, ds.target(0).mean());
  state.apply(c.fact(3));
  state.apply(c.fact(40));
  const std::vector<std::size_t> groups = all_groups(c);

  std::vector<double> serial(c.size()), parallel(c.size());
  kernels::group_gains_serial(state, c, groups, serial);
  kernels::group_gains_parallel(state, c, groups, parallel);
  CHECK(serial == parallel);

  CHECK(kernels::group_bounds_serial(state, c, groups) ==
        kernels::group_bounds_parallel(state, c, groups));

  std::vector<std::vector<FactId>> speeches;
  for (FactId a = 0; a < 30; ++a) {
    for (FactId b = a + 1; b < 30; ++b) speeches.push_back({a, b, static_cast<FactId>(a + 100)});
  }
  CHECK(kernels::speech_errors_serial(c, 0.0, speeches) ==
        kernels::speech_errors_parallel(c, 0.0, speeches));
  kernels::set_threads(saved);
}

TEST_CASE("speech_error agrees with speech_utility") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 30; ++i) {
    const Instance inst = random_instance(rng);
    const FactCatalog c = FactCatalog::from_facts(inst.slice, inst.facts);
    std::vector<FactId> ids;
    for (FactId id = 0; id < c.size(); id += 2) ids.push_back(id);
    const double e = kernels::speech_error(c, inst.prior, ids);
    CHECK(e == doctest::Approx(speech_utility(inst.slice, inst.prior, c.speech(ids)).error)
                   .epsilon(1e-12));
  }
}

TEST_CASE("combination residuals after the Winter fact") {
  const Dataset ds = flight_fixture();
  const Slice slice(ds, 0, all_rows(ds));
  const FactCatalog c = FactCatalog::generate(slice, every_group(2));
  ExpectationState state(slice, 0.0);
  state.apply(c.fact(testing::find_fact(c, testing::scope(ds, {{"season", "Winter"}}))));

  const auto rows = naive::flight_rows();
  const std::vector<naive::Fact> winter = {naive::fact(rows, {std::nullopt, "Winter"})};
  for (std::size_t g = 1; g <= 2; ++g) {
    const std::size_t dim = g - 1;
    const auto expect = naive::residual_by(rows, winter, 0.0, dim);
    const std::vector<double> sums = kernels::combination_residuals(state, c.group(g));
    for (FactId id = c.group(g).first; id < c.group(g).first + c.group(g).count; ++id) {
      const Scope& s = c.fact(id).scope;
      const std::string name = ds.dimension(s.bindings()[0].dim).decode(s.bindings()[0].value);
      // Combination c of a fact is the one its rows map to.
      const std::size_t pos = c.positions(id).front();
      CHECK(sums[c.group(g).combo_of_row[pos]] == expect.at(name));
    }
  }
  CHECK(kernels::combination_residuals(state, c.group(0)).at(0) == 80.0);
}
