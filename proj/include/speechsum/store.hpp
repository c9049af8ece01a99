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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace speechsum {

// Column/value pairs sorted by column name.
using NamedScope = std::vector<std::pair<std::string, std::string>>;

void normalize(NamedScope& scope);

struct StoredFact {
  NamedScope scope;
  double value = 0.0;
  std::size_t support = 0;

  bool operator==(const StoredFact&) const = default;
};

struct SpeechRecord {
  std::string target;
  NamedScope scope;
  std::vector<StoredFact> facts;
  double utility = 0.0;
  double base_error = 0.0;
  std::string text;

  std::string key() const;
  bool operator==(const SpeechRecord&) const = default;
};

// target "|" sorted "col=value" tokens joined by "&".
std::string canonical_key(std::string_view target, const NamedScope& scope);

// Names and value dictionaries, so queries can be parsed without the data.
struct StoreSchema {
  std::vector<std::string> targets;
  std::vector<std::pair<std::string, std::vector<std::string>>> dimensions;

  bool operator==(const StoreSchema&) const = default;
};

struct StoreManifest {
  int version = 1;
  nlohmann::json config = nlohmann::json::object();
  std::string fingerprint;  // FNV-1a 64 of the raw data file, hex
  std::string created;      // ISO-8601 UTC
  StoreSchema schema;
};

class SpeechStore {
 public:
  SpeechStore() = default;
  explicit SpeechStore(StoreManifest manifest) : manifest_(std::move(manifest)) {}

  const StoreManifest& manifest() const { return manifest_; }
  StoreManifest& manifest() { return manifest_; }

  // Records in ascending key order.
  const std::vector<SpeechRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }

  // Sorts by key and rebuilds the index. Throws StoreError on a duplicate
  // key.
  void assign(std::vector<SpeechRecord> records);

  const SpeechRecord* find(std::string_view key) const;
  // Record indices for one target, in key order.
  const std::vector<std::size_t>& records_for(std::string_view target) const;

 private:
  StoreManifest manifest_;
  std::vector<SpeechRecord> records_;
  std::map<std::string, std::size_t, std::less<>> by_key_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_target_;
};

nlohmann::json to_json(const SpeechRecord& record);
SpeechRecord record_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const StoreManifest& manifest);
StoreManifest manifest_from_json(const nlohmann::json& doc);

// One record as it appears in the store file, without newline.
std::string serialize_record(const SpeechRecord& record);

// Manifest line first, then one record per line in key order.
void save_store(const SpeechStore& store, const std::filesystem::path& path);

// Throws StoreError naming the offending line.
SpeechStore load_store(const std::filesystem::path& path);

std::string fingerprint_file(const std::filesystem::path& path);

// Warning text when the data file no longer matches the manifest.
std::optional<std::string> check_fingerprint(
    const SpeechStore& store, const std::filesystem::path& data_path);

}  // namespace speechsum
