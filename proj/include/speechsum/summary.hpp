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

// Semantic kernel shared by every summarizer: facts, speeches, the
// closest-value expectation model and the deviation-based utility.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "speechsum/dataset.hpp"
#include "speechsum/scope.hpp"

namespace speechsum {

// A scope and the average target value over the rows it covers.
struct Fact {
  Scope scope;
  double value = 0.0;
  std::size_t support = 0;
};

// A set of facts, kept in canonical scope order. No two facts may share a
// scope.
class Speech {
 public:
  Speech() = default;
  // Throws std::invalid_argument on duplicate scopes.
  explicit Speech(std::vector<Fact> facts);

  std::span<const Fact> facts() const { return facts_; }
  std::size_t size() const { return facts_.size(); }
  bool empty() const { return facts_.empty(); }

 private:
  std::vector<Fact> facts_;
};

// The rows of one query scope that carry a value for one target. All
// positions used by the kernels index into this slice, not the dataset.
class Slice {
 public:
  // Throws DataError if a row lacks the target or is out of range.
  Slice(const Dataset& ds, std::size_t target, std::vector<RowIndex> rows);

  // Rows within `scope` that have a value for `target`.
  static Slice of_scope(const Dataset& ds, std::size_t target,
                        const Scope& scope);

  const Dataset& dataset() const { return *ds_; }
  std::size_t target() const { return target_; }
  std::span<const RowIndex> rows() const { return rows_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

 private:
  const Dataset* ds_;
  std::size_t target_;
  std::vector<RowIndex> rows_;
  std::vector<double> values_;
};

bool within_scope(const Scope& scope, const Dataset& ds, RowIndex row);

// Facts for every value combination of each column set in `fact_groups`,
// computed over the slice. Groups are emitted in canonical column-set
// order, facts within a group in scope order.
std::vector<Fact> generate_facts(const Slice& slice,
                                 std::span<const ColumnSet> fact_groups);

// The candidate value (in-scope fact values plus the prior) closest to the
// row's true value; ties go to the smaller candidate.
double expected_value(const Slice& slice, std::size_t pos,
                      const Speech& speech, double prior);

struct ErrorUtility {
  double error = 0.0;
  double utility = 0.0;
};

// Accumulated deviation of `speech` over the slice and its reduction
// relative to the empty speech. Throws std::invalid_argument on an empty
// slice.
ErrorUtility speech_utility(const Slice& slice, double prior,
                            const Speech& speech);

std::vector<double> single_fact_utilities(const Slice& slice, double prior,
                                          std::span<const Fact> facts);

// Per-row user expectations for the current partial speech.
class ExpectationState {
 public:
  ExpectationState(const Slice& slice, double prior);

  const Slice& slice() const { return *slice_; }
  double prior() const { return prior_; }
  std::span<const double> expectations() const { return expectations_; }
  double expectation(std::size_t pos) const { return expectations_[pos]; }
  double residual(std::size_t pos) const;
  // Total deviation, summed in row order.
  double error() const;

  // Moves each in-scope row's expectation to the fact value when that is
  // strictly closer to the truth.
  void apply(const Fact& fact);
  // Same, for rows already known to lie in the fact's scope.
  void apply_at(std::span<const std::size_t> positions, double value);

 private:
  const Slice* slice_;
  double prior_;
  std::vector<double> expectations_;
};

// Utility added by `fact` on top of the state's speech; computed from
// scratch by scanning the slice.
double marginal_gain(const ExpectationState& state, const Fact& fact);

ExpectationState update_expectations(ExpectationState state, const Fact& fact);

// Gain of replacing expectation `e` by candidate `candidate` for a row with
// true value `v`.
inline double row_gain(double e, double candidate, double v) {
  const double before = e > v ? e - v : v - e;
  const double after = candidate > v ? candidate - v : v - candidate;
  return after < before ? before - after : 0.0;
}

}  // namespace speechsum
