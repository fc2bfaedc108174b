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
#include <span>
#include <string_view>
#include <vector>

#include "dcrhlab/szkcommit/problem.hpp"

namespace dcrhlab::szkcommit {

enum class SbcKind {
  ideal,      // trusted ledger: the sender sees an opaque handle
  injective,  // keyed permutation of rho || coins: binding, hiding only computationally
};

std::string_view sbc_kind_name(SbcKind kind);
SbcKind parse_sbc_kind(std::string_view name);

// Statistically binding commitment to a sampler string.
class Sbc {
 public:
  Sbc(SbcKind kind, int value_bits, int coin_bits = 2, std::uint64_t seed = 1);

  SbcKind kind() const { return kind_; }
  int value_bits() const { return value_bits_; }
  int coin_bits() const { return kind_ == SbcKind::ideal ? 0 : coin_bits_; }
  int commitment_bits() const { return kind_ == SbcKind::ideal ? 1 : value_bits_ + coin_bits_; }

  std::uint64_t commit(std::uint64_t rho, std::uint64_t coins) const;
  // What a commitment value reveals: the committed string, or nothing for the ideal ledger.
  std::optional<std::uint64_t> extract(std::uint64_t c) const;

 private:
  SbcKind kind_;
  int value_bits_;
  int coin_bits_;
  std::vector<std::uint32_t> perm_;
  std::vector<std::uint32_t> inverse_;
};

// Slot j = 2 i + b for i in [n], b in {0, 1}.
constexpr std::size_t slot(int i, int b) { return static_cast<std::size_t>(2 * i + b); }

// XOR shares of a bit: the first slots - 1 from share_bits, the last fixed by the plaintext.
std::vector<std::uint64_t> shares_for(int slots, std::uint64_t plaintext, std::uint64_t share_bits);

// "For some column beta, every x_{i,beta} = Pi(rho_{i,beta} xor sigma_{i,beta})
// where rho_{i,beta} is the string bound by C_{i,beta}."
bool column_consistent(const PromiseProblem& p, int beta, std::span<const std::uint64_t> bound,
                       std::span<const std::uint64_t> sigma, std::span<const Instance* const> instances);
bool wi_statement(const PromiseProblem& p, std::span<const std::uint64_t> bound, std::span<const std::uint64_t> sigma,
                  std::span<const Instance* const> instances);

struct WiOutcome {
  bool verdict = false;        // what the sender learns
  bool witness_valid = false;  // audit: the prover's witness satisfies the relation
  int witness_column = 0;
};

// Ideal WI: the verifier learns only whether the statement holds.
WiOutcome ideal_wi(const PromiseProblem& p, std::span<const std::uint64_t> bound, std::span<const std::uint64_t> sigma,
                   std::span<const Instance* const> instances, int witness_column,
                   std::span<const std::uint64_t> witness_rho);

}  // namespace dcrhlab::szkcommit
