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

#include "speechsum/catalog.hpp"

#include <algorithm>
#include <map>

namespace speechsum {

namespace {

struct CanonicalLess {
  bool operator()(ColumnSet a, ColumnSet b) const { return canonical_less(a, b); }
};

}  // namespace

void FactCatalog::add_group(ColumnSet cols, std::vector<Fact> facts,
                            bool fill_from_data) {
  Grouping grouping = group_rows(slice_->dataset(), cols, slice_->rows());
  if (grouping.scopes.empty()) return;

  FactGroup group;
  group.columns = cols;
  group.m_count = grouping.scopes.size();
  group.first = static_cast<FactId>(facts_.size());
  group.combo_of_row = std::move(grouping.group_of);
  group.fact_of_combo.assign(group.m_count, kNoFact);

  if (fill_from_data) {
    const auto values = slice_->values();
    std::vector<double> sums(group.m_count, 0.0);
    std::vector<std::size_t> counts(group.m_count, 0);
    for (std::size_t pos = 0; pos < values.size(); ++pos) {
      sums[group.combo_of_row[pos]] += values[pos];
      ++counts[group.combo_of_row[pos]];
    }
    facts.clear();
    for (std::size_t c = 0; c < group.m_count; ++c) {
      facts.push_back(Fact{std::move(grouping.scopes[c]),
                           sums[c] / static_cast<double>(counts[c]), counts[c]});
    }
  }
  if (facts.empty()) return;

  // Both lists are in scope order; merge to link combinations to facts.
  std::size_t f = 0;
  for (std::size_t c = 0; c < group.m_count && f < facts.size(); ++c) {
    const Scope& combo = fill_from_data ? facts[c].scope : grouping.scopes[c];
    while (f < facts.size() && facts[f].scope < combo) ++f;
    if (f < facts.size() && facts[f].scope == combo) {
      group.fact_of_combo[c] = group.first + static_cast<FactId>(f);
    }
  }
  group.count = static_cast<FactId>(facts.size());
  const std::size_t gid = groups_.size();
  for (Fact& fact : facts) {
    facts_.push_back(std::move(fact));
    group_of_fact_.push_back(gid);
  }
  groups_.push_back(std::move(group));
}

FactCatalog FactCatalog::generate(const Slice& slice,
                                  std::span<const ColumnSet> groups) {
  std::vector<ColumnSet> ordered(groups.begin(), groups.end());
  std::sort(ordered.begin(), ordered.end(), canonical_less);
  ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());

  FactCatalog catalog;
  catalog.slice_ = &slice;
  for (ColumnSet cols : ordered) catalog.add_group(cols, {}, true);
  return catalog;
}

FactCatalog FactCatalog::from_facts(const Slice& slice,
                                    std::span<const Fact> facts) {
  std::map<ColumnSet, std::vector<Fact>, CanonicalLess> buckets;
  for (const Fact& f : facts) {
    auto& bucket = buckets[f.scope.columns()];
    const bool seen = std::any_of(bucket.begin(), bucket.end(),
                                  [&](const Fact& g) { return g.scope == f.scope; });
    if (!seen) bucket.push_back(f);
  }

  FactCatalog catalog;
  catalog.slice_ = &slice;
  for (auto& [cols, bucket] : buckets) {
    std::sort(bucket.begin(), bucket.end(),
              [](const Fact& a, const Fact& b) { return a.scope < b.scope; });
    const std::size_t before = catalog.facts_.size();
    catalog.add_group(cols, bucket, false);
    if (catalog.facts_.size() == before) {
      // Nothing of this column set occurs in the slice; keep the facts so
      // ids stay meaningful, in a group with no rows linked.
      FactGroup group;
      group.columns = cols;
      group.first = static_cast<FactId>(catalog.facts_.size());
      group.count = static_cast<FactId>(bucket.size());
      group.combo_of_row.assign(slice.size(), 0);
      group.fact_of_combo.assign(slice.empty() ? 0 : 1, kNoFact);
      group.m_count = group.fact_of_combo.size();
      for (Fact& f : bucket) {
        catalog.facts_.push_back(std::move(f));
        catalog.group_of_fact_.push_back(catalog.groups_.size());
      }
      catalog.groups_.push_back(std::move(group));
    }
  }
  return catalog;
}

std::vector<GroupStats> FactCatalog::group_stats() const {
  std::vector<GroupStats> out;
  out.reserve(groups_.size());
  for (const FactGroup& g : groups_) {
    out.push_back({g.columns, std::max<std::size_t>(g.m_count, 1)});
  }
  return out;
}

std::vector<std::size_t> FactCatalog::positions(FactId id) const {
  const FactGroup& g = groups_[group_of_fact_[id]];
  std::vector<std::size_t> out;
  for (std::size_t pos = 0; pos < g.combo_of_row.size(); ++pos) {
    if (g.fact_of_combo[g.combo_of_row[pos]] == id) out.push_back(pos);
  }
  return out;
}

Speech FactCatalog::speech(std::span<const FactId> ids) const {
  std::vector<Fact> chosen;
  chosen.reserve(ids.size());
  for (FactId id : ids) chosen.push_back(facts_[id]);
  return Speech(std::move(chosen));
}

}  // namespace speechsum
