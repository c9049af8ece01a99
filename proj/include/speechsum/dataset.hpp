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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "speechsum/config.hpp"
#include "speechsum/scope.hpp"

namespace speechsum {

// Category assigned to empty dimension cells.
inline constexpr std::string_view kNullCategory = "\xE2\x88\x85NULL";

// A dictionary-encoded categorical column. Value ids are dense and assigned
// in order of first appearance.
class DimensionColumn {
 public:
  explicit DimensionColumn(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  std::span<const ValueId> codes() const { return codes_; }
  ValueId code(RowIndex row) const { return codes_[row]; }
  const std::vector<std::string>& dictionary() const { return dictionary_; }
  std::size_t cardinality() const { return dictionary_.size(); }

  const std::string& decode(ValueId id) const { return dictionary_.at(id); }
  std::optional<ValueId> find(std::string_view value) const;

  // Returns the id of `value`, adding it to the dictionary when new.
  ValueId encode(std::string_view value);
  void push_back(std::string_view value) { codes_.push_back(encode(value)); }

 private:
  std::string name_;
  std::vector<ValueId> codes_;
  std::vector<std::string> dictionary_;
  std::unordered_map<std::string, ValueId> index_;
};

// A numeric column. Entries with present[r] == 0 are missing and skipped by
// every per-target aggregation; stored values are always finite.
struct TargetColumn {
  std::string name;
  std::vector<double> values;
  std::vector<std::uint8_t> present;

  bool has(RowIndex row) const { return present[row] != 0; }
  std::size_t present_count() const;
  // Mean over present entries, summed in row order.
  double mean() const;
};

// Immutable columnar table.
class Dataset {
 public:
  // Throws DataError when column lengths disagree or a target holds a
  // non-finite present value.
  Dataset(std::string name, std::vector<DimensionColumn> dims,
          std::vector<TargetColumn> targets, std::size_t dropped_rows = 0);

  const std::string& name() const { return name_; }
  std::size_t n_rows() const { return n_rows_; }
  std::size_t dropped_rows() const { return dropped_rows_; }

  std::size_t n_dims() const { return dims_.size(); }
  std::size_t n_targets() const { return targets_.size(); }
  const DimensionColumn& dimension(DimId d) const { return dims_.at(d); }
  const TargetColumn& target(std::size_t t) const { return targets_.at(t); }
  const std::vector<DimensionColumn>& dimensions() const { return dims_; }
  const std::vector<TargetColumn>& targets() const { return targets_; }

  std::optional<DimId> find_dimension(std::string_view name) const;
  std::optional<std::size_t> find_target(std::string_view name) const;

  ColumnSet all_dimensions() const;

 private:
  std::string name_;
  std::vector<DimensionColumn> dims_;
  std::vector<TargetColumn> targets_;
  std::size_t n_rows_ = 0;
  std::size_t dropped_rows_ = 0;
};

// Row-at-a-time construction, used by the loader, fixtures and generators.
class DatasetBuilder {
 public:
  DatasetBuilder(std::string name, std::vector<std::string> dimensions,
                 std::vector<std::string> targets);

  // Empty dimension strings map to kNullCategory; nullopt or non-finite
  // targets are recorded as missing.
  void add_row(std::span<const std::string> dims,
               std::span<const std::optional<double>> targets);
  void count_dropped() { ++dropped_; }

  Dataset build() &&;

 private:
  std::string name_;
  std::vector<DimensionColumn> dims_;
  std::vector<TargetColumn> targets_;
  std::size_t dropped_ = 0;
};

// Reads a delimited text file with a header row. Rows whose targets are all
// unparseable are dropped and counted. Throws DataError on a missing file,
// an unknown column, or a target without any parseable value.
Dataset load_dataset(const std::filesystem::path& path,
                     const EngineConfig& config);

// Rows of `rows` grouped by their value combination on `cols`.
struct Grouping {
  std::vector<Scope> scopes;            // sorted lexicographically
  std::vector<std::uint32_t> group_of;  // per input position
};

Grouping group_rows(const Dataset& ds, ColumnSet cols,
                    std::span<const RowIndex> rows);

// Every value combination over `cols` present in the data, in
// lexicographic order of value ids. Its size is M(cols).
std::vector<Scope> distinct_combinations(const Dataset& ds, ColumnSet cols);
std::vector<Scope> distinct_combinations(const Dataset& ds, ColumnSet cols,
                                         std::span<const RowIndex> rows);

std::vector<RowIndex> all_rows(const Dataset& ds);

}  // namespace speechsum
