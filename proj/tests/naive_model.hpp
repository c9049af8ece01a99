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

// Reference model for tests. Works on strings and plain vectors and shares
// no code with the library, so values derived here are independent checks.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace naive {

struct Row {
  std::vector<std::string> dims;
  double v = 0.0;
};

// nullopt leaves a column unrestricted.
struct Fact {
  std::vector<std::optional<std::string>> scope;
  double value = 0.0;
};

inline std::vector<Row> flight_rows() {
  const char* regions[] = {"East", "South", "West", "North"};
  const char* seasons[] = {"Spring", "Summer", "Fall", "Winter"};
  const double delay[4][4] = {{0, 0, 0, 20}, {0, 20, 0, 10}, {0, 0, 0, 10}, {10, 20, 10, 20}};
  std::vector<Row> rows;
  for (int r = 0; r < 4; ++r) {
    for (int s = 0; s < 4; ++s) rows.push_back({{regions[r], seasons[s]}, delay[r][s]});
  }
  return rows;
}

inline bool covers(const std::vector<std::optional<std::string>>& scope, const Row& row) {
  for (std::size_t d = 0; d < scope.size(); ++d) {
    if (scope[d] && *scope[d] != row.dims[d]) return false;
  }
  return true;
}

inline double mean(const std::vector<Row>& rows,
                   const std::vector<std::optional<std::string>>& scope) {
  double sum = 0.0;
  int n = 0;
  for (const Row& r : rows) {
    if (covers(scope, r)) {
      sum += r.v;
      ++n;
    }
  }
  return n == 0 ? std::numeric_limits<double>::quiet_NaN() : sum / n;
}

inline Fact fact(const std::vector<Row>& rows,
                 std::vector<std::optional<std::string>> scope) {
  const double v = mean(rows, scope);
  return {std::move(scope), v};
}

// Closest candidate to the truth among the prior and covering facts.
inline double expectation(const std::vector<Fact>& facts, const Row& row, double prior) {
  double best = prior;
  for (const Fact& f : facts) {
    if (!covers(f.scope, row)) continue;
    const double d = std::abs(f.value - row.v);
    const double b = std::abs(best - row.v);
    if (d < b || (d == b && f.value < best)) best = f.value;
  }
  return best;
}

inline double error(const std::vector<Row>& rows, const std::vector<Fact>& facts, double prior) {
  double total = 0.0;
  for (const Row& r : rows) total += std::abs(expectation(facts, r, prior) - r.v);
  return total;
}

inline double utility(const std::vector<Row>& rows, const std::vector<Fact>& facts, double prior) {
  return error(rows, {}, prior) - error(rows, facts, prior);
}

// Every fact over every subset of the given column count, in no particular
// order.
inline std::vector<Fact> all_facts(const std::vector<Row>& rows, std::size_t dims,
                                   bool include_overall = true) {
  std::vector<Fact> out;
  for (unsigned mask = include_overall ? 0 : 1; mask < (1U << dims); ++mask) {
    std::map<std::vector<std::optional<std::string>>, bool> seen;
    for (const Row& r : rows) {
      std::vector<std::optional<std::string>> scope(dims);
      for (std::size_t d = 0; d < dims; ++d) {
        if (mask & (1U << d)) scope[d] = r.dims[d];
      }
      if (!seen.emplace(scope, true).second) continue;
      out.push_back(fact(rows, scope));
    }
  }
  return out;
}

struct Choice {
  std::vector<std::size_t> picked;
  double utility = 0.0;
};

// Plain greedy: recompute every candidate's utility from scratch each step.
inline Choice greedy(const std::vector<Row>& rows, const std::vector<Fact>& facts,
                     double prior, std::size_t m) {
  Choice c;
  std::vector<Fact> chosen;
  for (std::size_t step = 0; step < m; ++step) {
    const double base = utility(rows, chosen, prior);
    double best_gain = 0.0;
    std::size_t best = facts.size();
    for (std::size_t i = 0; i < facts.size(); ++i) {
      auto trial = chosen;
      trial.push_back(facts[i]);
      const double gain = utility(rows, trial, prior) - base;
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    if (best == facts.size()) break;
    chosen.push_back(facts[best]);
    c.picked.push_back(best);
  }
  c.utility = utility(rows, chosen, prior);
  return c;
}

// Best utility over all subsets of size <= m (recursive).
inline double optimum(const std::vector<Row>& rows, const std::vector<Fact>& facts,
                      double prior, std::size_t m, std::size_t from = 0,
                      std::vector<Fact> chosen = {}) {
  double best = utility(rows, chosen, prior);
  if (chosen.size() == m) return best;
  for (std::size_t i = from; i < facts.size(); ++i) {
    auto next = chosen;
    next.push_back(facts[i]);
    best = std::max(best, optimum(rows, facts, prior, m, i + 1, std::move(next)));
  }
  return best;
}

// Residual |e - v| summed per value of column `dim` under `facts`.
inline std::map<std::string, double> residual_by(const std::vector<Row>& rows,
                                                 const std::vector<Fact>& facts,
                                                 double prior, std::size_t dim) {
  std::map<std::string, double> out;
  for (const Row& r : rows) out[r.dims[dim]] += std::abs(expectation(facts, r, prior) - r.v);
  return out;
}

}  // namespace naive
