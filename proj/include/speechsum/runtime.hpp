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
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "speechsum/store.hpp"

namespace speechsum {

struct Query {
  std::string target;
  NamedScope predicates;  // sorted by column
};

// Grammar: TARGET [where COL = VALUE {and COL = VALUE}]. Keywords, names and
// values match case-insensitively and are returned in their stored
// spelling. Throws QueryError; unknown names carry suggestions within edit
// distance 2.
Query parse_query(std::string_view text, const StoreSchema& schema);

std::size_t edit_distance(std::string_view a, std::string_view b);

// Case-insensitive candidates within distance 2, closest first.
std::vector<std::string> suggestions(std::string_view word,
                                     const std::vector<std::string>& vocabulary);

// The exact record if stored; otherwise the record of the query's target
// whose scope is contained in the query and shares the most bindings with
// it, smallest key first. Throws QueryError when the target has no records.
const SpeechRecord& lookup(const SpeechStore& store, const Query& query);

// "[scope: ... | utility: ... | facts: N]"
std::string provenance_line(const SpeechRecord& record);

// Reads queries line by line until `:quit` or end of input. Errors are
// printed and the loop continues.
void run_repl(const SpeechStore& store, std::istream& in, std::ostream& out);

}  // namespace speechsum
