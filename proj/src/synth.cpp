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

#include "speechsum/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <ostream>

#include "speechsum/catalog.hpp"

namespace speechsum {

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::vector<ColumnSet> all_column_sets(std::size_t dims) {
  std::vector<ColumnSet> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << dims); ++bits) {
    out.push_back(ColumnSet::from_bits(bits));
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

}  // namespace

Dataset flight_fixture() {
  static const char* kRegions[] = {"East", "South", "West", "North"};
  static const char* kSeasons[] = {"Spring", "Summer", "Fall", "Winter"};
  static const double kDelay[4][4] = {
      {0, 0, 0, 20},    // East
      {0, 20, 0, 10},   // South
      {0, 0, 0, 10},    // West
      {10, 20, 10, 20}  // North
  };
  DatasetBuilder b("flights", {"region", "season"}, {"delay"});
  for (int r = 0; r < 4; ++r) {
    for (int s = 0; s < 4; ++s) {
      const std::string dims[] = {kRegions[r], kSeasons[s]};
      const std::optional<double> target[] = {kDelay[r][s]};
      b.add_row(dims, target);
    }
  }
  return std::move(b).build();
}

Instance fixture_instance() {
  auto ds = std::make_shared<const Dataset>(flight_fixture());
  Slice slice(*ds, 0, all_rows(*ds));
  const std::vector<ColumnSet> groups = all_column_sets(2);
  std::vector<Fact> facts = generate_facts(slice, groups);
  return Instance{ds, std::move(slice), std::move(facts), 2, 0.0, "fixture"};
}

Instance random_instance(std::mt19937_64& rng, const RandomSpec& spec) {
  const std::size_t dims = uniform(rng, 1, spec.max_dims);
  const std::size_t rows = uniform(rng, std::min<std::size_t>(4, spec.max_rows), spec.max_rows);
  const bool integral = uniform(rng, 0, 1) == 0;

  std::vector<std::string> dim_names;
  std::vector<std::size_t> cards;
  for (std::size_t d = 0; d < dims; ++d) {
    dim_names.push_back("d" + std::to_string(d));
    cards.push_back(uniform(rng, 1, spec.max_values));
  }
  DatasetBuilder b("random", dim_names, {"y"});
  std::uniform_real_distribution<double> real(-10.0, 30.0);
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<std::string> values;
    for (std::size_t d = 0; d < dims; ++d) {
      values.push_back("v" + std::to_string(uniform(rng, 0, cards[d] - 1)));
    }
    const double y = integral ? static_cast<double>(uniform(rng, 0, 20)) : real(rng);
    const std::optional<double> target[] = {y};
    b.add_row(values, target);
  }
  auto ds = std::make_shared<const Dataset>(std::move(b).build());
  Slice slice(*ds, 0, all_rows(*ds));

  std::vector<Fact> facts = generate_facts(slice, all_column_sets(dims));
  std::shuffle(facts.begin(), facts.end(), rng);
  facts.resize(std::min(facts.size(), uniform(rng, 1, spec.max_facts)));

  double prior = 0.0;
  switch (uniform(rng, 0, 2)) {
    case 0: prior = 0.0; break;
    case 1: prior = ds->target(0).mean(); break;
    default: prior = integral ? static_cast<double>(uniform(rng, 0, 20)) : real(rng);
  }
  const std::size_t m = uniform(rng, 1, spec.max_m);
  const std::string label = "rows=" + std::to_string(rows) + " dims=" +
                            std::to_string(dims) + " facts=" +
                            std::to_string(facts.size()) + " m=" + std::to_string(m);
  return Instance{ds, std::move(slice), std::move(facts), m, prior, label};
}

Dataset synthetic_dataset(std::size_t dims, std::size_t values, std::size_t rows,
                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> names;
  std::vector<std::vector<double>> effect(dims);
  std::normal_distribution<double> spread(0.0, 5.0);
  for (std::size_t d = 0; d < dims; ++d) {
    names.push_back("d" + std::to_string(d));
    for (std::size_t v = 0; v < values; ++v) effect[d].push_back(spread(rng));
  }
  DatasetBuilder b("synthetic", names, {"y"});
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<std::string> row(dims);
  for (std::size_t r = 0; r < rows; ++r) {
    double y = noise(rng);
    for (std::size_t d = 0; d < dims; ++d) {
      const std::size_t v = uniform(rng, 0, values - 1);
      row[d] = "v" + std::to_string(v);
      y += effect[d][v];
    }
    const std::optional<double> target[] = {y};
    b.add_row(row, target);
  }
  return std::move(b).build();
}

Dataset skewed_dataset(std::size_t rows, std::size_t b_values, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  DatasetBuilder b("skewed", {"a", "b"}, {"y"});
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t a = uniform(rng, 0, 1);
    const std::size_t v = uniform(rng, 0, b_values - 1);
    const std::string dims[] = {"a" + std::to_string(a), "b" + std::to_string(v)};
    const std::optional<double> target[] = {10.0 * static_cast<double>(a) + noise(rng)};
    b.add_row(dims, target);
  }
  return std::move(b).build();
}

void write_csv(const Dataset& ds, std::ostream& out) {
  auto field = [&](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
      out << s;
      return;
    }
    out << '"';
    for (char c : s) out << (c == '"' ? "\"\"" : std::string(1, c));
    out << '"';
  };
  bool first = true;
  for (const DimensionColumn& d : ds.dimensions()) {
    if (!first) out << ',';
    field(d.name());
    first = false;
  }
  for (const TargetColumn& t : ds.targets()) {
    if (!first) out << ',';
    field(t.name);
    first = false;
  }
  out << '\n';
  char buf[32];
  for (RowIndex r = 0; r < ds.n_rows(); ++r) {
    first = true;
    for (const DimensionColumn& d : ds.dimensions()) {
      if (!first) out << ',';
      field(d.decode(d.code(r)));
      first = false;
    }
    for (const TargetColumn& t : ds.targets()) {
      if (!first) out << ',';
      if (t.has(r)) {
        std::snprintf(buf, sizeof(buf), "%.17g", t.values[r]);
        out << buf;
      }
      first = false;
    }
    out << '\n';
  }
}

}  // namespace speechsum
