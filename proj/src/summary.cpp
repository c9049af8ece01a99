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

#include "speechsum/summary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "speechsum/catalog.hpp"
#include "speechsum/errors.hpp"

namespace speechsum {

Speech::Speech(std::vector<Fact> facts) : facts_(std::move(facts)) {
  std::sort(facts_.begin(), facts_.end(),
            [](const Fact& a, const Fact& b) { return a.scope < b.scope; });
  for (std::size_t i = 1; i < facts_.size(); ++i) {
    if (facts_[i].scope == facts_[i - 1].scope) {
      throw std::invalid_argument("speech contains two facts with one scope");
    }
  }
}

Slice::Slice(const Dataset& ds, std::size_t target, std::vector<RowIndex> rows)
    : ds_(&ds), target_(target), rows_(std::move(rows)) {
  if (target >= ds.n_targets()) throw DataError("unknown target id");
  const TargetColumn& col = ds.target(target);
  values_.reserve(rows_.size());
  for (RowIndex r : rows_) {
    if (r >= ds.n_rows() || !col.has(r)) {
      throw DataError("slice row lacks a value for target '" + col.name + "'");
    }
    values_.push_back(col.values[r]);
  }
}

Slice Slice::of_scope(const Dataset& ds, std::size_t target,
                      const Scope& scope) {
  if (target >= ds.n_targets()) throw DataError("unknown target id");
  const TargetColumn& col = ds.target(target);
  std::vector<RowIndex> rows;
  for (RowIndex r = 0; r < ds.n_rows(); ++r) {
    if (col.has(r) && within_scope(scope, ds, r)) rows.push_back(r);
  }
  return Slice(ds, target, std::move(rows));
}

bool within_scope(const Scope& scope, const Dataset& ds, RowIndex row) {
  for (const Binding& b : scope.bindings()) {
    if (ds.dimension(b.dim).code(row) != b.value) return false;
  }
  return true;
}

std::vector<Fact> generate_facts(const Slice& slice,
                                 std::span<const ColumnSet> fact_groups) {
  const FactCatalog catalog = FactCatalog::generate(slice, fact_groups);
  const auto facts = catalog.facts();
  return {facts.begin(), facts.end()};
}

double expected_value(const Slice& slice, std::size_t pos,
                      const Speech& speech, double prior) {
  const double v = slice.values()[pos];
  const RowIndex row = slice.rows()[pos];
  double best = prior;
  double best_dev = std::abs(prior - v);
  for (const Fact& f : speech.facts()) {
    if (!within_scope(f.scope, slice.dataset(), row)) continue;
    const double dev = std::abs(f.value - v);
    if (dev < best_dev || (dev == best_dev && f.value < best)) {
      best = f.value;
      best_dev = dev;
    }
  }
  return best;
}

ErrorUtility speech_utility(const Slice& slice, double prior,
                            const Speech& speech) {
  if (slice.empty()) throw std::invalid_argument("speech_utility on an empty slice");
  double base = 0.0;
  double error = 0.0;
  const auto values = slice.values();
  for (std::size_t pos = 0; pos < slice.size(); ++pos) {
    base += std::abs(prior - values[pos]);
    error += std::abs(expected_value(slice, pos, speech, prior) - values[pos]);
  }
  return {error, base - error};
}

std::vector<double> single_fact_utilities(const Slice& slice, double prior,
                                          std::span<const Fact> facts) {
  std::vector<double> out;
  out.reserve(facts.size());
  for (const Fact& f : facts) {
    out.push_back(speech_utility(slice, prior, Speech({f})).utility);
  }
  return out;
}

ExpectationState::ExpectationState(const Slice& slice, double prior)
    : slice_(&slice), prior_(prior), expectations_(slice.size(), prior) {}

double ExpectationState::residual(std::size_t pos) const {
  return std::abs(expectations_[pos] - slice_->values()[pos]);
}

double ExpectationState::error() const {
  double total = 0.0;
  const auto values = slice_->values();
  for (std::size_t pos = 0; pos < expectations_.size(); ++pos) {
    total += std::abs(expectations_[pos] - values[pos]);
  }
  return total;
}

void ExpectationState::apply(const Fact& fact) {
  const auto values = slice_->values();
  const auto rows = slice_->rows();
  for (std::size_t pos = 0; pos < expectations_.size(); ++pos) {
    if (!within_scope(fact.scope, slice_->dataset(), rows[pos])) continue;
    if (std::abs(fact.value - values[pos]) < std::abs(expectations_[pos] - values[pos])) {
      expectations_[pos] = fact.value;
    }
  }
}

void ExpectationState::apply_at(std::span<const std::size_t> positions,
                                double value) {
  const auto values = slice_->values();
  for (std::size_t pos : positions) {
    if (std::abs(value - values[pos]) < std::abs(expectations_[pos] - values[pos])) {
      expectations_[pos] = value;
    }
  }
}

double marginal_gain(const ExpectationState& state, const Fact& fact) {
  const Slice& slice = state.slice();
  const auto values = slice.values();
  const auto rows = slice.rows();
  double gain = 0.0;
  for (std::size_t pos = 0; pos < slice.size(); ++pos) {
    if (!within_scope(fact.scope, slice.dataset(), rows[pos])) continue;
    gain += row_gain(state.expectation(pos), fact.value, values[pos]);
  }
  return gain;
}

ExpectationState update_expectations(ExpectationState state, const Fact& fact) {
  state.apply(fact);
  return state;
}

}  // namespace speechsum
