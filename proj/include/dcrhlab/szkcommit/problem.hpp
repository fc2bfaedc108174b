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
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dcrhlab/probkit/rational.hpp"

namespace dcrhlab::szkcommit {

using probkit::Rational;

struct SzkParams {
  int n = 2;            // instances per column
  int k = 4;            // IDC coin bits
  int output_bits = 5;  // m_x, at least 1 + k
  int coin_bits = 2;    // sampler coins per instance
  int class_bits = 1;   // leading sampler coins that pick the class
  std::uint64_t yes_count = 1;      // YES iff the class coins, read as an integer, are below this
  Rational yes_tolerance{3, 4};     // largest IDC epsilon a YES table may have
  std::uint64_t seed = 1;
};

void validate(const SzkParams& p);

enum class Classification { yes, no, outside };

std::string_view classification_name(Classification c);

// A table g: {0,1}^{1+k} -> {0,1}^{m_x}. As an instance-dependent commitment,
// commit(b; r) = g(b || r) and an opening (b, r) is accepted iff it maps to c.
class Instance {
 public:
  Instance(int k, int output_bits, std::vector<std::uint32_t> table);

  int k() const { return k_; }
  int output_bits() const { return m_; }
  const std::vector<std::uint32_t>& table() const { return table_; }

  std::uint32_t commit(std::uint64_t b, std::uint64_t r) const;
  bool verify(std::uint64_t c, std::uint64_t b, std::uint64_t r) const;

  // Delta(g(0, U_k), g(1, U_k)).
  const Rational& epsilon() const { return epsilon_; }
  // Lexicographically first (r0, r1) with g(0 || r0) = g(1 || r1).
  const std::optional<std::pair<std::uint64_t, std::uint64_t>>& equivocation() const { return equivocation_; }
  bool injective() const { return injective_; }
  // Every output in the image has at least two preimages.
  bool lossy() const { return lossy_; }

  std::string encode() const;
  static Instance decode(std::string_view hex, int k, int output_bits);

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.k_ == b.k_ && a.m_ == b.m_ && a.table_ == b.table_;
  }

 private:
  int k_;
  int m_;
  std::vector<std::uint32_t> table_;
  Rational epsilon_;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> equivocation_;
  bool injective_ = false;
  bool lossy_ = false;
};

// Toy promise problem: YES = lossy tables within the hiding tolerance,
// NO = injective tables. The sampler reads class coins then a pool index.
class PromiseProblem {
 public:
  explicit PromiseProblem(SzkParams params);

  const SzkParams& params() const { return params_; }
  Classification classify(const Instance& x) const;

  std::uint64_t coin_space() const { return std::uint64_t{1} << params_.coin_bits; }
  const Instance& sample(std::uint64_t r) const;
  bool sample_is_yes(std::uint64_t r) const;

  // Fraction of sampler coins whose instance classifies as YES.
  Rational yes_rate() const { return yes_rate_; }

  const std::vector<Instance>& yes_pool() const { return yes_pool_; }
  const std::vector<Instance>& no_pool() const { return no_pool_; }
  // Pool entry equal to x, or nullptr.
  const Instance* find(const Instance& x) const;

 private:
  SzkParams params_;
  std::vector<Instance> yes_pool_;
  std::vector<Instance> no_pool_;
  Rational yes_rate_;
};

}  // namespace dcrhlab::szkcommit
