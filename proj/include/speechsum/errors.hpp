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

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>

namespace speechsum {

// Malformed or inconsistent input data.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Store file could not be read or parsed.
class StoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Query text or lookup failure; carries optional spelling suggestions.
class QueryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TimeoutError : public std::runtime_error {
 public:
  TimeoutError() : std::runtime_error("deadline exceeded") {}
};

// Wall-clock budget shared by the summarizers. A default-constructed
// deadline never expires.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;
  explicit Deadline(Clock::time_point at) : at_(at) {}

  static Deadline after(Clock::duration budget) {
    return Deadline(Clock::now() + budget);
  }

  bool expired() const { return at_ && Clock::now() >= *at_; }

  void check() const {
    if (expired()) throw TimeoutError();
  }

 private:
  std::optional<Clock::time_point> at_;
};

}  // namespace speechsum
