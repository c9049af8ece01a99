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

#include <atomic>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include "naive_model.hpp"
#include "speechsum/catalog.hpp"
#include "speechsum/dataset.hpp"
#include "speechsum/synth.hpp"

namespace testing {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(SPEECHSUM_TEST_DATA) / name;
}

// A fresh file path under the system temp directory.
inline std::filesystem::path temp_path(const std::string& stem) {
  static std::atomic<int> counter{0};
  const auto dir = std::filesystem::temp_directory_path() / "speechsum_tests";
  std::filesystem::create_directories(dir);
  return dir / (stem + "_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
}

inline std::filesystem::path write_file(const std::string& stem, const std::string& text) {
  const auto path = temp_path(stem);
  std::ofstream(path) << text;
  return path;
}

inline speechsum::Scope scope(const speechsum::Dataset& ds,
                              std::vector<std::pair<std::string, std::string>> bindings) {
  std::vector<speechsum::Binding> out;
  for (const auto& [col, value] : bindings) {
    const auto d = ds.find_dimension(col);
    const auto v = ds.dimension(*d).find(value);
    out.push_back({*d, *v});
  }
  return speechsum::Scope(std::move(out));
}

inline speechsum::FactId find_fact(const speechsum::FactCatalog& catalog,
                                   const speechsum::Scope& s) {
  for (speechsum::FactId id = 0; id < catalog.size(); ++id) {
    if (catalog.fact(id).scope == s) return id;
  }
  return speechsum::kNoFact;
}

// Library fact for a reference-model fact; dims in dataset order.
inline speechsum::Fact to_library(const speechsum::Dataset& ds, const naive::Fact& f) {
  std::vector<speechsum::Binding> b;
  for (std::size_t d = 0; d < f.scope.size(); ++d) {
    if (!f.scope[d]) continue;
    const auto dim = static_cast<speechsum::DimId>(d);
    b.push_back({dim, *ds.dimension(dim).find(*f.scope[d])});
  }
  return speechsum::Fact{speechsum::Scope(std::move(b)), f.value, 0};
}

inline std::vector<speechsum::Fact> to_library(const speechsum::Dataset& ds,
                                               const std::vector<naive::Fact>& facts) {
  std::vector<speechsum::Fact> out;
  for (const auto& f : facts) out.push_back(to_library(ds, f));
  return out;
}

struct NaiveInstance {
  std::vector<naive::Row> rows;
  std::vector<naive::Fact> facts;
};

// The same slice and facts as plain strings for the reference model.
inline NaiveInstance to_naive(const speechsum::Instance& inst) {
  NaiveInstance out;
  const speechsum::Dataset& ds = *inst.data;
  for (std::size_t p = 0; p < inst.slice.size(); ++p) {
    naive::Row row;
    for (std::size_t d = 0; d < ds.n_dims(); ++d) {
      const auto& col = ds.dimension(static_cast<speechsum::DimId>(d));
      row.dims.push_back(col.decode(col.code(inst.slice.rows()[p])));
    }
    row.v = inst.slice.values()[p];
    out.rows.push_back(std::move(row));
  }
  for (const speechsum::Fact& f : inst.facts) {
    naive::Fact g;
    g.scope.resize(ds.n_dims());
    for (const speechsum::Binding& b : f.scope.bindings()) {
      g.scope[b.dim] = ds.dimension(b.dim).decode(b.value);
    }
    g.value = f.value;
    out.facts.push_back(std::move(g));
  }
  return out;
}

}  // namespace testing
