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

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace speechsum {

using DimId = std::uint32_t;
using ValueId = std::uint32_t;
using RowIndex = std::uint32_t;

inline constexpr std::size_t kMaxDimensions = 64;

// A set of dimension columns, stored as a bitmask over dimension ids.
class ColumnSet {
 public:
  constexpr ColumnSet() = default;
  ColumnSet(std::initializer_list<DimId> ids);

  static constexpr ColumnSet from_bits(std::uint64_t bits) {
    ColumnSet s;
    s.bits_ = bits;
    return s;
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const {
    return static_cast<std::size_t>(std::popcount(bits_));
  }
  constexpr bool contains(DimId d) const { return (bits_ >> d) & 1U; }
  constexpr bool subset_of(ColumnSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr ColumnSet unite(ColumnSet other) const {
    return from_bits(bits_ | other.bits_);
  }
  void insert(DimId d);

  // Member ids in ascending order.
  std::vector<DimId> ids() const;

  constexpr bool operator==(const ColumnSet&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

// Lexicographic comparison of the ascending id lists.
bool lexicographic_less(ColumnSet a, ColumnSet b);

// Smaller sets first, then lexicographic. This is the fact-group order used
// throughout the engine.
bool canonical_less(ColumnSet a, ColumnSet b);

struct Binding {
  DimId dim = 0;
  ValueId value = 0;

  auto operator<=>(const Binding&) const = default;
};

// A conjunction of equality predicates on dimension columns. Bindings are
// kept sorted by dimension id; an empty scope is unrestricted.
class Scope {
 public:
  Scope() = default;
  // Throws std::invalid_argument on a repeated dimension.
  explicit Scope(std::vector<Binding> bindings);
  Scope(std::initializer_list<Binding> bindings)
      : Scope(std::vector<Binding>(bindings)) {}

  std::span<const Binding> bindings() const { return bindings_; }
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }

  ColumnSet columns() const;
  std::optional<ValueId> value_of(DimId dim) const;

  // True when every binding of *this also appears in `other`.
  bool subset_of(const Scope& other) const;

  // Number of bindings shared with `other`.
  std::size_t overlap(const Scope& other) const;

  auto operator<=>(const Scope&) const = default;

 private:
  std::vector<Binding> bindings_;
};

}  // namespace speechsum
