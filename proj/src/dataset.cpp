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

#include "speechsum/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "speechsum/errors.hpp"

namespace speechsum {

// DimensionColumn / TargetColumn.

std::optional<ValueId> DimensionColumn::find(std::string_view value) const {
  auto it = index_.find(std::string(value));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ValueId DimensionColumn::encode(std::string_view value) {
  std::string key = value.empty() ? std::string(kNullCategory) : std::string(value);
  auto [it, inserted] =
      index_.try_emplace(key, static_cast<ValueId>(dictionary_.size()));
  if (inserted) dictionary_.push_back(std::move(key));
  return it->second;
}

std::size_t TargetColumn::present_count() const {
  return static_cast<std::size_t>(
      std::count_if(present.begin(), present.end(),
                    [](std::uint8_t p) { return p != 0; }));
}

double TargetColumn::mean() const {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t r = 0; r < values.size(); ++r) {
    if (present[r]) {
      sum += values[r];
      ++count;
    }
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

// Dataset.

Dataset::Dataset(std::string name, std::vector<DimensionColumn> dims,
                 std::vector<TargetColumn> targets, std::size_t dropped_rows)
    : name_(std::move(name)),
      dims_(std::move(dims)),
      targets_(std::move(targets)),
      dropped_rows_(dropped_rows) {
  if (dims_.size() > kMaxDimensions) {
    throw DataError("at most 64 dimension columns are supported");
  }
  if (!dims_.empty()) {
    n_rows_ = dims_.front().codes().size();
  } else if (!targets_.empty()) {
    n_rows_ = targets_.front().values.size();
  }
  for (const DimensionColumn& d : dims_) {
    if (d.codes().size() != n_rows_) {
      throw DataError("dimension column '" + d.name() + "' has wrong length");
    }
    for (ValueId code : d.codes()) {
      if (code >= d.cardinality()) {
        throw DataError("dimension column '" + d.name() + "' has bad code");
      }
    }
  }
  for (const TargetColumn& t : targets_) {
    if (t.values.size() != n_rows_ || t.present.size() != n_rows_) {
      throw DataError("target column '" + t.name + "' has wrong length");
    }
    for (std::size_t r = 0; r < n_rows_; ++r) {
      if (t.present[r] && !std::isfinite(t.values[r])) {
        throw DataError("target column '" + t.name + "' holds a non-finite value");
      }
    }
  }
}

std::optional<DimId> Dataset::find_dimension(std::string_view name) const {
  for (std::size_t d = 0; d < dims_.size(); ++d) {
    if (dims_[d].name() == name) return static_cast<DimId>(d);
  }
  return std::nullopt;
}

std::optional<std::size_t> Dataset::find_target(std::string_view name) const {
  for (std::size_t t = 0; t < targets_.size(); ++t) {
    if (targets_[t].name == name) return t;
  }
  return std::nullopt;
}

ColumnSet Dataset::all_dimensions() const {
  ColumnSet all;
  for (std::size_t d = 0; d < dims_.size(); ++d) all.insert(static_cast<DimId>(d));
  return all;
}

// DatasetBuilder.

DatasetBuilder::DatasetBuilder(std::string name,
                               std::vector<std::string> dimensions,
                               std::vector<std::string> targets)
    : name_(std::move(name)) {
  for (auto& d : dimensions) dims_.emplace_back(std::move(d));
  for (auto& t : targets) targets_.push_back(TargetColumn{std::move(t), {}, {}});
}

void DatasetBuilder::add_row(std::span<const std::string> dims,
                             std::span<const std::optional<double>> targets) {
  if (dims.size() != dims_.size() || targets.size() != targets_.size()) {
    throw DataError("row arity does not match the declared columns");
  }
  for (std::size_t d = 0; d < dims.size(); ++d) dims_[d].push_back(dims[d]);
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const bool ok = targets[t].has_value() && std::isfinite(*targets[t]);
    targets_[t].values.push_back(ok ? *targets[t] : 0.0);
    targets_[t].present.push_back(ok ? 1 : 0);
  }
}

Dataset DatasetBuilder::build() && {
  return Dataset(std::move(name_), std::move(dims_), std::move(targets_),
                 dropped_);
}

// Loading.

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Splits one line, honouring double-quoted fields with "" escapes.
std::vector<std::string> split_line(std::string_view line, char delim) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delim) {
      fields.push_back(std::string(trim(current)));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(std::string(trim(current)));
  return fields;
}

std::optional<double> parse_real(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

std::size_t column_index(const std::vector<std::string>& header,
                         const std::string& name,
                         const std::filesystem::path& path) {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    throw DataError("column '" + name + "' not found in header of " +
                    path.string());
  }
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

Dataset load_dataset(const std::filesystem::path& path,
                     const EngineConfig& config) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open data file " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw DataError("data file " + path.string() + " is empty");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  const char delim = config.delimiter.value_or(
      line.find('\t') != std::string::npos ? '\t' : ',');
  const std::vector<std::string> header = split_line(line, delim);

  std::vector<std::size_t> dim_idx;
  std::vector<std::size_t> target_idx;
  for (const auto& d : config.dimensions) dim_idx.push_back(column_index(header, d, path));
  for (const auto& t : config.targets) target_idx.push_back(column_index(header, t, path));

  DatasetBuilder builder(path.stem().string(), config.dimensions,
                         config.targets);
  std::vector<std::string> dims(dim_idx.size());
  std::vector<std::optional<double>> targets(target_idx.size());
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split_line(line, delim);
    bool any_target = false;
    for (std::size_t t = 0; t < target_idx.size(); ++t) {
      targets[t] = target_idx[t] < fields.size() ? parse_real(fields[target_idx[t]])
                                                 : std::nullopt;
      any_target = any_target || targets[t].has_value();
    }
    if (!any_target) {
      builder.count_dropped();
      continue;
    }
    for (std::size_t d = 0; d < dim_idx.size(); ++d) {
      dims[d] = dim_idx[d] < fields.size() ? fields[dim_idx[d]] : std::string();
    }
    builder.add_row(dims, targets);
  }

  Dataset ds = std::move(builder).build();
  for (const TargetColumn& t : ds.targets()) {
    if (t.present_count() == 0) {
      throw DataError("target column '" + t.name + "' has zero parseable values");
    }
  }
  return ds;
}

// Grouping.

Grouping group_rows(const Dataset& ds, ColumnSet cols,
                    std::span<const RowIndex> rows) {
  Grouping out;
  if (rows.empty()) return out;
  const std::vector<DimId> ids = cols.ids();
  for (DimId d : ids) {
    if (d >= ds.n_dims()) throw DataError("unknown dimension id in column set");
  }

  // Dense ids by successive pairing: (previous dense id, next code) -> id.
  std::vector<std::uint32_t> dense(rows.size(), 0);
  std::size_t count = 1;
  for (DimId d : ids) {
    const DimensionColumn& col = ds.dimension(d);
    const std::uint64_t card = std::max<std::size_t>(col.cardinality(), 1);
    const std::uint64_t space = count * card;
    std::uint32_t next = 0;
    if (space <= std::max<std::uint64_t>(4 * rows.size(), 1U << 16)) {
      std::vector<std::uint32_t> table(space, std::numeric_limits<std::uint32_t>::max());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::uint64_t key = dense[i] * card + col.code(rows[i]);
        if (table[key] == std::numeric_limits<std::uint32_t>::max()) table[key] = next++;
        dense[i] = table[key];
      }
    } else {
      std::unordered_map<std::uint64_t, std::uint32_t> table;
      table.reserve(rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::uint64_t key = dense[i] * card + col.code(rows[i]);
        auto [it, inserted] = table.try_emplace(key, next);
        if (inserted) ++next;
        dense[i] = it->second;
      }
    }
    count = next;
  }

  std::vector<std::size_t> representative(count, rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (representative[dense[i]] == rows.size()) representative[dense[i]] = i;
  }
  std::vector<Scope> scopes;
  scopes.reserve(count);
  for (std::size_t g = 0; g < count; ++g) {
    std::vector<Binding> b;
    b.reserve(ids.size());
    for (DimId d : ids) b.push_back({d, ds.dimension(d).code(rows[representative[g]])});
    scopes.emplace_back(std::move(b));
  }
  std::vector<std::uint32_t> order(count);
  std::iota(order.begin(), order.end(), 0U);
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return scopes[a] < scopes[b]; });
  std::vector<std::uint32_t> rank(count);
  out.scopes.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    rank[order[i]] = i;
    out.scopes.push_back(std::move(scopes[order[i]]));
  }
  out.group_of.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) out.group_of[i] = rank[dense[i]];
  return out;
}

std::vector<Scope> distinct_combinations(const Dataset& ds, ColumnSet cols,
                                         std::span<const RowIndex> rows) {
  if (rows.empty()) {
    // Validate the columns even when there is nothing to group.
    for (DimId d : cols.ids()) {
      if (d >= ds.n_dims()) throw DataError("unknown dimension id in column set");
    }
    if (cols.empty()) return {Scope()};
    return {};
  }
  return group_rows(ds, cols, rows).scopes;
}

std::vector<Scope> distinct_combinations(const Dataset& ds, ColumnSet cols) {
  const std::vector<RowIndex> rows = all_rows(ds);
  return distinct_combinations(ds, cols, rows);
}

std::vector<RowIndex> all_rows(const Dataset& ds) {
  std::vector<RowIndex> rows(ds.n_rows());
  std::iota(rows.begin(), rows.end(), RowIndex{0});
  return rows;
}

}  // namespace speechsum
