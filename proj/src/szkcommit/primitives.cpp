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

#include "dcrhlab/szkcommit/primitives.hpp"

#include <string>

#include "dcrhlab/common/bits.hpp"
#include "dcrhlab/common/error.hpp"
#include "dcrhlab/common/rng.hpp"

namespace dcrhlab::szkcommit {

std::string_view sbc_kind_name(SbcKind kind) { return kind == SbcKind::ideal ? "ideal" : "injective"; }

SbcKind parse_sbc_kind(std::string_view name) {
  if (name == "ideal") return SbcKind::ideal;
  if (name == "injective") return SbcKind::injective;
  throw ConfigError("unknown SBC: " + std::string(name));
}

Sbc::Sbc(SbcKind kind, int value_bits, int coin_bits, std::uint64_t seed)
    : kind_(kind), value_bits_(value_bits), coin_bits_(coin_bits) {
  if (value_bits < 1 || coin_bits < 0 || value_bits + coin_bits > 20) throw ConfigError("bad SBC shape");
  if (kind_ == SbcKind::ideal) return;
  const std::size_t space = pow2(value_bits + coin_bits);
  perm_.resize(space);
  inverse_.resize(space);
  for (std::uint32_t v = 0; v < space; ++v) perm_[v] = v;
  Rng rng(derive_seed(seed, {0x534243}));
  for (std::size_t i = space; i > 1; --i) std::swap(perm_[i - 1], perm_[rng.below(i)]);
  for (std::uint32_t v = 0; v < space; ++v) inverse_[perm_[v]] = v;
}

std::uint64_t Sbc::commit(std::uint64_t rho, std::uint64_t coins) const {
  if (rho > low_mask(value_bits_) || coins > low_mask(coin_bits())) throw DomainMismatch("SBC input out of range");
  if (kind_ == SbcKind::ideal) return 0;
  return perm_[(rho << coin_bits_) | coins];
}

std::optional<std::uint64_t> Sbc::extract(std::uint64_t c) const {
  if (kind_ == SbcKind::ideal || c >= inverse_.size()) return std::nullopt;
  return inverse_[c] >> coin_bits_;
}

std::vector<std::uint64_t> shares_for(int slots, std::uint64_t plaintext, std::uint64_t share_bits) {
  std::vector<std::uint64_t> s(static_cast<std::size_t>(slots));
  std::uint64_t x = plaintext & 1;
  for (int j = 0; j + 1 < slots; ++j) {
    s[static_cast<std::size_t>(j)] = (share_bits >> j) & 1;
    x ^= s[static_cast<std::size_t>(j)];
  }
  s.back() = x;
  return s;
}

bool column_consistent(const PromiseProblem& p, int beta, std::span<const std::uint64_t> bound,
                       std::span<const std::uint64_t> sigma, std::span<const Instance* const> instances) {
  for (int i = 0; i < p.params().n; ++i) {
    const std::size_t j = slot(i, beta);
    const Instance& expect = p.sample(bound[j] ^ sigma[j]);
    if (instances[j] != &expect && !(*instances[j] == expect)) return false;
  }
  return true;
}

bool wi_statement(const PromiseProblem& p, std::span<const std::uint64_t> bound, std::span<const std::uint64_t> sigma,
                  std::span<const Instance* const> instances) {
  return column_consistent(p, 0, bound, sigma, instances) || column_consistent(p, 1, bound, sigma, instances);
}

WiOutcome ideal_wi(const PromiseProblem& p, std::span<const std::uint64_t> bound, std::span<const std::uint64_t> sigma,
                   std::span<const Instance* const> instances, int witness_column,
                   std::span<const std::uint64_t> witness_rho) {
  WiOutcome out;
  out.witness_column = witness_column;
  out.verdict = wi_statement(p, bound, sigma, instances);
  bool valid = column_consistent(p, witness_column, bound, sigma, instances);
  for (int i = 0; i < p.params().n && valid; ++i) valid = witness_rho[static_cast<std::size_t>(i)] == bound[slot(i, witness_column)];
  out.witness_valid = valid;
  return out;
}

}  // namespace dcrhlab::szkcommit
