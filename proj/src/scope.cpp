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

#include "speechsum/scope.hpp"

#include <algorithm>
#include <stdexcept>

namespace speechsum {

ColumnSet::ColumnSet(std::initializer_list<DimId> ids) {
  for (DimId d : ids) insert(d);
}

void ColumnSet::insert(DimId d) {
  if (d >= kMaxDimensions) {
    throw std::out_of_range("dimension id exceeds column-set capacity");
  }
  bits_ |= std::uint64_t{1} << d;
}

std::vector<DimId> ColumnSet::ids() const {
  std::vector<DimId> out;
  out.reserve(size());
  for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
    out.push_back(static_cast<DimId>(std::countr_zero(rest)));
  }
  return out;
}

bool lexicographic_less(ColumnSet a, ColumnSet b) {
  const auto ia = a.ids();
  const auto ib = b.ids();
  return std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(),
                                      ib.end());
}

bool canonical_less(ColumnSet a, ColumnSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return lexicographic_less(a, b);
}

Scope::Scope(std::vector<Binding> bindings) : bindings_(std::move(bindings)) {
  std::sort(bindings_.begin(), bindings_.end());
  for (std::size_t i = 1; i < bindings_.size(); ++i) {
    if (bindings_[i].dim == bindings_[i - 1].dim) {
      throw std::invalid_argument("scope binds a dimension twice");
    }
  }
}

ColumnSet Scope::columns() const {
  ColumnSet cols;
  for (const Binding& b : bindings_) cols.insert(b.dim);
  return cols;
}

std::optional<ValueId> Scope::value_of(DimId dim) const {
  auto it = std::lower_bound(
      bindings_.begin(), bindings_.end(), dim,
      [](const Binding& b, DimId d) { return b.dim < d; });
  if (it == bindings_.end() || it->dim != dim) return std::nullopt;
  return it->value;
}

bool Scope::subset_of(const Scope& other) const {
  return std::includes(other.bindings_.begin(), other.bindings_.end(),
                       bindings_.begin(), bindings_.end());
}

std::size_t Scope::overlap(const Scope& other) const {
  std::size_t shared = 0;
  auto a = bindings_.begin();
  auto b = other.bindings_.begin();
  while (a != bindings_.end() && b != other.bindings_.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++shared;
      ++a;
      ++b;
    }
  }
  return shared;
}

}  // namespace speechsum
