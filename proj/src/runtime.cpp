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

#include "speechsum/runtime.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>

#include "speechsum/errors.hpp"
#include "speechsum/pipeline.hpp"

namespace speechsum {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && lower(a) == lower(b);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits on a whitespace-delimited keyword, case-insensitively.
std::vector<std::string_view> split_keyword(std::string_view s, std::string_view kw) {
  std::vector<std::string_view> parts;
  const std::string low = lower(s);
  const std::string key = lower(kw);
  std::size_t begin = 0;
  std::size_t pos = 0;
  while ((pos = low.find(key, pos)) != std::string::npos) {
    const bool left = pos == 0 || std::isspace(static_cast<unsigned char>(low[pos - 1]));
    const std::size_t end = pos + key.size();
    const bool right = end == low.size() || std::isspace(static_cast<unsigned char>(low[end]));
    if (left && right) {
      parts.push_back(s.substr(begin, pos - begin));
      begin = end;
    }
    pos = end;
  }
  parts.push_back(s.substr(begin));
  return parts;
}

std::string with_suggestions(std::string message, std::string_view word,
                             const std::vector<std::string>& vocabulary) {
  const std::vector<std::string> near = suggestions(word, vocabulary);
  if (!near.empty()) {
    message += "; did you mean ";
    for (std::size_t i = 0; i < near.size(); ++i) {
      if (i > 0) message += ", ";
      message += "'" + near[i] + "'";
    }
    message += "?";
  }
  return message;
}

const std::string* find_ci(const std::vector<std::string>& vocabulary,
                           std::string_view word) {
  for (const std::string& v : vocabulary) {
    if (v == word) return &v;
  }
  for (const std::string& v : vocabulary) {
    if (iequals(v, word)) return &v;
  }
  return nullptr;
}

}  // namespace

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::vector<std::string> suggestions(std::string_view word,
                                     const std::vector<std::string>& vocabulary) {
  const std::string low = lower(word);
  std::vector<std::pair<std::size_t, std::string>> scored;
  for (const std::string& v : vocabulary) {
    const std::size_t d = edit_distance(low, lower(v));
    if (d <= 2) scored.emplace_back(d, v);
  }
  std::sort(scored.begin(), scored.end());
  std::vector<std::string> out;
  for (auto& [d, v] : scored) out.push_back(std::move(v));
  return out;
}

Query parse_query(std::string_view text, const StoreSchema& schema) {
  const std::vector<std::string_view> clauses = split_keyword(trim(text), "where");
  if (clauses.size() > 2) throw QueryError("'where' may appear only once");

  Query query;
  const std::string_view target = trim(clauses[0]);
  if (target.empty()) throw QueryError("missing target");
  const std::string* t = find_ci(schema.targets, target);
  if (t == nullptr) {
    throw QueryError(with_suggestions("unknown target '" + std::string(target) + "'",
                                      target, schema.targets));
  }
  query.target = *t;
  if (clauses.size() == 1) return query;

  std::vector<std::string> columns;
  for (const auto& [name, values] : schema.dimensions) columns.push_back(name);

  for (std::string_view pred : split_keyword(clauses[1], "and")) {
    pred = trim(pred);
    const std::size_t eq = pred.find('=');
    if (eq == std::string_view::npos) {
      throw QueryError("expected COL = VALUE, got '" + std::string(pred) + "'");
    }
    const std::string_view col = trim(pred.substr(0, eq));
    const std::string_view value = trim(pred.substr(eq + 1));
    if (col.empty() || value.empty()) {
      throw QueryError("expected COL = VALUE, got '" + std::string(pred) + "'");
    }
    const std::string* c = find_ci(columns, col);
    if (c == nullptr) {
      throw QueryError(with_suggestions("unknown column '" + std::string(col) + "'",
                                        col, columns));
    }
    const auto& dictionary =
        std::find_if(schema.dimensions.begin(), schema.dimensions.end(),
                     [&](const auto& d) { return d.first == *c; })
            ->second;
    const std::string* v = find_ci(dictionary, value);
    if (v == nullptr) {
      throw QueryError(with_suggestions(
          "unknown value '" + std::string(value) + "' for column '" + *c + "'", value,
          dictionary));
    }
    const bool duplicate = std::any_of(query.predicates.begin(), query.predicates.end(),
                                       [&](const auto& p) { return p.first == *c; });
    if (duplicate) throw QueryError("column '" + *c + "' given twice");
    query.predicates.emplace_back(*c, *v);
  }
  normalize(query.predicates);
  return query;
}

const SpeechRecord& lookup(const SpeechStore& store, const Query& query) {
  NamedScope q = query.predicates;
  normalize(q);
  if (const SpeechRecord* exact = store.find(canonical_key(query.target, q))) {
    return *exact;
  }
  const std::vector<std::size_t>& ids = store.records_for(query.target);
  if (ids.empty()) throw QueryError("no speeches for target '" + query.target + "'");

  // Ids are in key order, so the first maximizer has the smallest key.
  const SpeechRecord* best = nullptr;
  for (std::size_t id : ids) {
    const SpeechRecord& r = store.records()[id];
    const bool contained = std::includes(q.begin(), q.end(), r.scope.begin(), r.scope.end());
    if (!contained) continue;
    if (best == nullptr || r.scope.size() > best->scope.size()) best = &r;
  }
  if (best == nullptr) {
    throw QueryError("no speech covers the query for target '" + query.target + "'");
  }
  return *best;
}

std::string provenance_line(const SpeechRecord& record) {
  std::string scope;
  for (const auto& [col, value] : record.scope) {
    if (!scope.empty()) scope += " and ";
    scope += col + "=" + value;
  }
  if (scope.empty()) scope = "(all rows)";
  return "[scope: " + scope + " | utility: " + format_value(record.utility) +
         " of " + format_value(record.base_error) +
         " | facts: " + std::to_string(record.facts.size()) + "]";
}

void run_repl(const SpeechStore& store, std::istream& in, std::ostream& out) {
  std::string line;
  out << "> " << std::flush;
  while (std::getline(in, line)) {
    const std::string_view cmd = trim(line);
    if (cmd == ":quit" || cmd == ":q") break;
    if (cmd == ":schema") {
      const StoreSchema& schema = store.manifest().schema;
      out << "targets:";
      for (const std::string& t : schema.targets) out << ' ' << t;
      out << '\n';
      for (const auto& [name, values] : schema.dimensions) {
        out << name << ":";
        for (const std::string& v : values) out << ' ' << v;
        out << '\n';
      }
    } else if (!cmd.empty()) {
      try {
        const SpeechRecord& r = lookup(store, parse_query(cmd, store.manifest().schema));
        out << r.text << '\n' << provenance_line(r) << '\n';
      } catch (const QueryError& e) {
        out << "error: " << e.what() << '\n';
      }
    }
    out << "> " << std::flush;
  }
  out << '\n';
}

}  // namespace speechsum
