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

#include <random>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "speechsum/config.hpp"
#include "speechsum/errors.hpp"
#include "speechsum/pipeline.hpp"
#include "speechsum/runtime.hpp"

using namespace speechsum;

namespace {

const SpeechStore& fixture_store() {
  static const SpeechStore store = [] {
    const EngineConfig cfg = load_config(testing::data_path("flights.json"));
    return build_store(load_dataset(cfg.data, cfg), cfg);
  }();
  return store;
}

const StoreSchema& schema() { return fixture_store().manifest().schema; }

std::string error_of(std::string_view text) {
  try {
    parse_query(text, schema());
  } catch (const QueryError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("edit distance and suggestions") {
  CHECK(edit_distance("", "abc") == 3);
  CHECK(edit_distance("winter", "winter") == 0);
  CHECK(edit_distance("wintr", "winter") == 1);
  CHECK(edit_distance("kitten", "sitting") == 3);
  const std::vector<std::string> seasons = {"Spring", "Summer", "Fall", "Winter"};
  CHECK(suggestions("Wintr", seasons) == std::vector<std::string>{"Winter"});
  CHECK(suggestions("fal", seasons) == std::vector<std::string>{"Fall"});
  CHECK(suggestions("xyzzy", seasons).empty());
}

TEST_CASE("query parsing") {
  const Query all = parse_query("delay", schema());
  CHECK(all.target == "delay");
  CHECK(all.predicates.empty());

  const Query q = parse_query("  DELAY where Season = winter AND region=East ", schema());
  CHECK(q.target == "delay");
  CHECK(q.predicates == NamedScope{{"region", "East"}, {"season", "Winter"}});

  CHECK(parse_query("delay where season = Winter", schema()).predicates ==
        NamedScope{{"season", "Winter"}});
}

TEST_CASE("query errors") {
  CHECK(error_of("delya").find("unknown target 'delya'; did you mean 'delay'?") !=
        std::string::npos);
  CHECK(error_of("delay where seasn = Winter").find("did you mean 'season'?") !=
        std::string::npos);
  CHECK(error_of("delay where season = Wintr").find("did you mean 'Winter'?") !=
        std::string::npos);
  CHECK(error_of("delay where airline = AA").find("unknown column 'airline'") !=
        std::string::npos);
  CHECK(error_of("delay where season = Winter and season = Fall").find("given twice") !=
        std::string::npos);
  CHECK(error_of("delay where season").find("expected COL = VALUE") != std::string::npos);
  CHECK(error_of("delay where season =").find("expected COL = VALUE") != std::string::npos);
  CHECK_FALSE(error_of("").empty());
  CHECK_FALSE(error_of("delay where a = b where c = d").empty());
}

TEST_CASE("lookup") {
  const SpeechStore& store = fixture_store();
  const SpeechRecord& exact = lookup(store, parse_query("delay where season = Winter", store.manifest().schema));
  CHECK(exact.key() == "delay|season=Winter");

  // Not stored: both single-column scopes are contained; the smaller key wins.
  const SpeechRecord& fallback =
      lookup(store, parse_query("delay where season = Winter and region = East",
                                store.manifest().schema));
  CHECK(fallback.key() == "delay|region=East");

  Query other;
  other.target = "cost";
  CHECK_THROWS_AS(lookup(store, other), QueryError);
}

TEST_CASE("lookup agrees with an exhaustive scan") {
  const SpeechStore& store = fixture_store();
  const StoreSchema& s = store.manifest().schema;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    Query q;
    q.target = "delay";
    for (const auto& [col, values] : s.dimensions) {
      if (rng() % 2) q.predicates.emplace_back(col, values[rng() % values.size()]);
    }
    normalize(q.predicates);
    const SpeechRecord* best = nullptr;
    for (const SpeechRecord& r : store.records()) {
      bool inside = true;
      for (const auto& b : r.scope) {
        inside = inside && std::find(q.predicates.begin(), q.predicates.end(), b) !=
                               q.predicates.end();
      }
      if (!inside) continue;
      if (best == nullptr || r.scope.size() > best->scope.size() ||
          (r.scope.size() == best->scope.size() && r.key() < best->key())) {
        best = &r;
      }
    }
    REQUIRE(best != nullptr);
    CHECK(&lookup(store, q) == best);
  }
}

TEST_CASE("provenance") {
  const SpeechStore& store = fixture_store();
  CHECK(provenance_line(*store.find("delay|")) ==
        "[scope: (all rows) | utility: 75 of 120 | facts: 2]");
  CHECK(provenance_line(*store.find("delay|season=Winter")) ==
        "[scope: season=Winter | utility: 45 of 60 | facts: 2]");
}

TEST_CASE("repl") {
  std::istringstream in("delay where season = Winter\n:schema\ndelay where seasn = Fall\n\n:quit\ndelay\n");
  std::ostringstream out;
  run_repl(fixture_store(), in, out);
  const std::string text = out.str();
  CHECK(text.find("The average delay for season=Winter is 15.") != std::string::npos);
  CHECK(text.find("targets: delay") != std::string::npos);
  CHECK(text.find("season: Fall Spring Summer Winter") != std::string::npos);
  CHECK(text.find("error: unknown column 'seasn'") != std::string::npos);
  // Nothing after :quit is answered.
  CHECK(text.find("for overall") == std::string::npos);

  std::istringstream eof("delay\n");
  std::ostringstream out2;
  run_repl(fixture_store(), eof, out2);
  CHECK(out2.str().find("The average delay for overall is 7.5.") != std::string::npos);
}
