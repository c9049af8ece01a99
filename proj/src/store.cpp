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

#include "speechsum/store.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>

#include "speechsum/errors.hpp"

namespace speechsum {

using nlohmann::json;

void normalize(NamedScope& scope) { std::sort(scope.begin(), scope.end()); }

std::string canonical_key(std::string_view target, const NamedScope& scope) {
  std::vector<std::string> tokens;
  tokens.reserve(scope.size());
  for (const auto& [col, value] : scope) tokens.push_back(col + "=" + value);
  std::sort(tokens.begin(), tokens.end());
  std::string key(target);
  key += '|';
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) key += '&';
    key += tokens[i];
  }
  return key;
}

std::string SpeechRecord::key() const { return canonical_key(target, scope); }

// SpeechStore.

void SpeechStore::assign(std::vector<SpeechRecord> records) {
  std::vector<std::pair<std::string, std::size_t>> keyed;
  keyed.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) keyed.emplace_back(records[i].key(), i);
  std::sort(keyed.begin(), keyed.end());

  records_.clear();
  by_key_.clear();
  by_target_.clear();
  records_.reserve(records.size());
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (i > 0 && keyed[i].first == keyed[i - 1].first) {
      throw StoreError("duplicate record key '" + keyed[i].first + "'");
    }
    records_.push_back(std::move(records[keyed[i].second]));
    by_key_.emplace(keyed[i].first, i);
    by_target_[records_.back().target].push_back(i);
  }
}

const SpeechRecord* SpeechStore::find(std::string_view key) const {
  auto it = by_key_.find(key);
  return it == by_key_.end() ? nullptr : &records_[it->second];
}

const std::vector<std::size_t>& SpeechStore::records_for(
    std::string_view target) const {
  static const std::vector<std::size_t> kNone;
  auto it = by_target_.find(target);
  return it == by_target_.end() ? kNone : it->second;
}

// JSON.

namespace {

json scope_json(const NamedScope& scope) {
  json obj = json::object();
  for (const auto& [col, value] : scope) obj[col] = value;
  return obj;
}

NamedScope scope_from_json(const json& obj) {
  if (!obj.is_object()) throw StoreError("scope must be an object");
  NamedScope scope;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    scope.emplace_back(it.key(), it.value().get<std::string>());
  }
  normalize(scope);
  return scope;
}

}  // namespace

json to_json(const SpeechRecord& record) {
  json facts = json::array();
  for (const StoredFact& f : record.facts) {
    facts.push_back({{"scope", scope_json(f.scope)},
                     {"support", f.support},
                     {"value", f.value}});
  }
  return {{"base_error", record.base_error},
          {"facts", std::move(facts)},
          {"key", record.key()},
          {"scope", scope_json(record.scope)},
          {"target", record.target},
          {"text", record.text},
          {"utility", record.utility}};
}

SpeechRecord record_from_json(const json& doc) {
  SpeechRecord r;
  r.target = doc.at("target").get<std::string>();
  r.scope = scope_from_json(doc.at("scope"));
  for (const json& f : doc.at("facts")) {
    r.facts.push_back(StoredFact{scope_from_json(f.at("scope")),
                                 f.at("value").get<double>(),
                                 f.at("support").get<std::size_t>()});
  }
  r.utility = doc.at("utility").get<double>();
  r.base_error = doc.at("base_error").get<double>();
  r.text = doc.at("text").get<std::string>();
  if (doc.contains("key") && doc.at("key").get<std::string>() != r.key()) {
    throw StoreError("record key does not match its target and scope");
  }
  return r;
}

json to_json(const StoreManifest& manifest) {
  json dims = json::array();
  for (const auto& [name, values] : manifest.schema.dimensions) {
    dims.push_back({{"name", name}, {"values", values}});
  }
  return {{"config", manifest.config},
          {"created", manifest.created},
          {"fingerprint", manifest.fingerprint},
          {"schema", {{"dimensions", std::move(dims)},
                      {"targets", manifest.schema.targets}}},
          {"version", manifest.version}};
}

StoreManifest manifest_from_json(const json& doc) {
  StoreManifest m;
  m.version = doc.at("version").get<int>();
  if (m.version != 1) throw StoreError("unsupported store version");
  m.config = doc.value("config", json::object());
  m.fingerprint = doc.value("fingerprint", std::string());
  m.created = doc.value("created", std::string());
  if (doc.contains("schema")) {
    const json& schema = doc.at("schema");
    m.schema.targets = schema.value("targets", std::vector<std::string>{});
    for (const json& d : schema.value("dimensions", json::array())) {
      m.schema.dimensions.emplace_back(d.at("name").get<std::string>(),
                                       d.at("values").get<std::vector<std::string>>());
    }
  }
  return m;
}

std::string serialize_record(const SpeechRecord& record) {
  return to_json(record).dump();
}

void save_store(const SpeechStore& store, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw StoreError("cannot write store file " + path.string());
  out << to_json(store.manifest()).dump() << '\n';
  for (const SpeechRecord& r : store.records()) out << serialize_record(r) << '\n';
  out.flush();
  if (!out) throw StoreError("failed writing store file " + path.string());
}

SpeechStore load_store(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StoreError("cannot open store file " + path.string());

  std::string line;
  std::size_t line_no = 0;
  auto parse = [&](const std::string& text) {
    try {
      return json::parse(text);
    } catch (const json::exception& e) {
      throw StoreError(path.string() + ":" + std::to_string(line_no) +
                       ": malformed line: " + e.what());
    }
  };

  SpeechStore store;
  std::vector<SpeechRecord> records;
  bool have_manifest = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const json doc = parse(line);
    try {
      if (!have_manifest) {
        store = SpeechStore(manifest_from_json(doc));
        have_manifest = true;
      } else {
        records.push_back(record_from_json(doc));
      }
    } catch (const json::exception& e) {
      throw StoreError(path.string() + ":" + std::to_string(line_no) +
                       ": bad record: " + e.what());
    } catch (const StoreError& e) {
      throw StoreError(path.string() + ":" + std::to_string(line_no) + ": " +
                       e.what());
    }
  }
  if (!have_manifest) throw StoreError("store file " + path.string() + " is empty");
  store.assign(std::move(records));
  return store;
}

std::string fingerprint_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StoreError("cannot open " + path.string() + " for fingerprinting");
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char buf[1 << 14];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const auto got = static_cast<std::size_t>(in.gcount());
    for (std::size_t i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001b3ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(hash));
  return hex;
}

std::optional<std::string> check_fingerprint(
    const SpeechStore& store, const std::filesystem::path& data_path) {
  std::string actual;
  try {
    actual = fingerprint_file(data_path);
  } catch (const StoreError& e) {
    return std::string("cannot verify data fingerprint: ") + e.what();
  }
  if (actual != store.manifest().fingerprint) {
    return "data file " + data_path.string() + " changed since the store was built (" +
           store.manifest().fingerprint + " vs " + actual + ")";
  }
  return std::nullopt;
}

}  // namespace speechsum
