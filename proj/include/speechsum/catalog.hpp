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
#include <limits>
#include <span>
#include <vector>

#include "speechsum/summary.hpp"

namespace speechsum {

using FactId = std::uint32_t;
inline constexpr FactId kNoFact = std::numeric_limits<FactId>::max();

// All candidate facts restricting one column set. Every slice row belongs
// to exactly one value combination of the group; combinations without a
// candidate fact map to kNoFact.
struct FactGroup {
  ColumnSet columns;
  std::size_t m_count = 0;  // distinct combinations within the slice
  FactId first = 0;         // facts occupy [first, first + count)
  FactId count = 0;
  std::vector<std::uint32_t> combo_of_row;  // per slice position
  std::vector<FactId> fact_of_combo;
};

// Light view of a group for the pruning cost model.
struct GroupStats {
  ColumnSet columns;
  std::size_t m_count = 0;
};

// Candidate facts for one slice, grouped by column set. Groups appear in
// canonical column-set order and facts within a group in scope order, so a
// fact id doubles as the deterministic tie-break rank.
class FactCatalog {
 public:
  // One fact per value combination present in the slice, for each group.
  static FactCatalog generate(const Slice& slice,
                              std::span<const ColumnSet> groups);

  // Arbitrary candidates (values are taken as given). Later facts whose
  // scope repeats an earlier one are dropped.
  static FactCatalog from_facts(const Slice& slice, std::span<const Fact> facts);

  const Slice& slice() const { return *slice_; }
  std::span<const Fact> facts() const { return facts_; }
  const Fact& fact(FactId id) const { return facts_[id]; }
  std::size_t size() const { return facts_.size(); }
  bool empty() const { return facts_.empty(); }

  std::span<const FactGroup> groups() const { return groups_; }
  const FactGroup& group(std::size_t g) const { return groups_[g]; }
  std::size_t group_of(FactId id) const { return group_of_fact_[id]; }
  std::vector<GroupStats> group_stats() const;

  // Slice positions covered by a fact.
  std::vector<std::size_t> positions(FactId id) const;

  Speech speech(std::span<const FactId> ids) const;

 private:
  FactCatalog() = default;
  void add_group(ColumnSet cols, std::vector<Fact> facts_in_scope_order,
                 bool fill_from_data);

  const Slice* slice_ = nullptr;
  std::vector<Fact> facts_;
  std::vector<FactGroup> groups_;
  std::vector<std::size_t> group_of_fact_;
};

}  // namespace speechsum
