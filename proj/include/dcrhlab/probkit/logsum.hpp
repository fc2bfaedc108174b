// Copyright 2026 The dcrhlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "dcrhlab/probkit/measures.hpp"

namespace dcrhlab::probkit {

// Accumulates sums of the form sum_k (num_k / den_k) * log2(value_k) over
// integer data, deferring all rational or floating work to `total()`.
class LogSum {
 public:
  void add(std::int64_t num, std::uint64_t den, std::uint64_t value);

  // num/den * log2(value) for every (value, count) with weight count.
  template <class Counts>
  void add_counts_xlogx(std::int64_t sign, std::uint64_t den, const Counts& counts) {
    for (const auto& [key, c] : counts) add(sign * static_cast<std::int64_t>(c), den, c);
  }

  bool empty() const { return terms_.empty(); }

  template <class Num>
  Bits<Num> total() const;

 private:
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::int64_t> terms_;  // (den, value) -> num
};

}  // namespace dcrhlab::probkit
