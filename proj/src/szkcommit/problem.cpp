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

#include "dcrhlab/szkcommit/problem.hpp"

#include <algorithm>
#include <map>

#include "dcrhlab/common/bits.hpp"
#include "dcrhlab/common/error.hpp"
#include "dcrhlab/common/hex.hpp"
#include "dcrhlab/common/rng.hpp"

namespace dcrhlab::szkcommit {
namespace {

constexpr int kMaxAttempts = 10000;

template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

std::vector<std::uint32_t> distinct_outputs(std::size_t count, int bits, Rng& rng) {
  std::vector<std::uint32_t> all(pow2(bits));
  for (std::uint32_t y = 0; y < all.size(); ++y) all[y] = y;
  shuffle(all, rng);
  all.resize(count);
  return all;
}

// Random perfect matching of the inputs, each pair sharing a fresh output.
Instance random_lossy(const SzkParams& p, Rng& rng) {
  const std::size_t inputs = pow2(1 + p.k);
  std::vector<std::uint32_t> order(inputs);
  for (std::uint32_t x = 0; x < inputs; ++x) order[x] = x;
  shuffle(order, rng);
  const auto outputs = distinct_outputs(inputs / 2, p.output_bits, rng);
  std::vector<std::uint32_t> table(inputs);
  for (std::size_t i = 0; i < inputs; ++i) table[order[i]] = outputs[i / 2];
  return Instance(p.k, p.output_bits, std::move(table));
}

Instance random_injective(const SzkParams& p, Rng& rng) {
  return Instance(p.k, p.output_bits, distinct_outputs(pow2(1 + p.k), p.output_bits, rng));
}

}  // namespace

void validate(const SzkParams& p) {
  if (p.n < 1 || p.n > 8) throw ConfigError("n must lie in 1..8");
  if (p.k < 1 || p.k > 8) throw ConfigError("k must lie in 1..8");
  if (p.output_bits < 1 + p.k || p.output_bits > 16) throw ConfigError("output bits must lie in k+1..16");
  if (p.coin_bits < 1 || p.coin_bits > 6) throw ConfigError("sampler coin bits must lie in 1..6");
  if (p.class_bits < 1 || p.class_bits > p.coin_bits) throw ConfigError("class bits must lie in 1..coin bits");
  if (p.yes_count > pow2(p.class_bits)) throw ConfigError("yes count exceeds the class coin space");
  if (p.yes_tolerance < 0 || p.yes_tolerance > 1) throw ConfigError("YES tolerance must lie in [0, 1]");
}

std::string_view classification_name(Classification c) {
  switch (c) {
    case Classification::yes: return "YES";
    case Classification::no: return "NO";
    case Classification::outside: return "OUTSIDE";
  }
  return "?";
}

Instance::Instance(int k, int output_bits, std::vector<std::uint32_t> table)
    : k_(k), m_(output_bits), table_(std::move(table)) {
  if (k < 0 || output_bits < 1 || output_bits > 32) throw ConfigError("bad instance shape");
  if (table_.size() != pow2(1 + k)) throw DomainMismatch("instance table must have 2^(1+k) entries");
  std::map<std::uint32_t, std::pair<std::uint64_t, std::uint64_t>> counts;  // output -> (#b=0, #b=1)
  for (std::uint64_t x = 0; x < table_.size(); ++x) {
    if (table_[x] > low_mask(m_)) throw DomainMismatch("instance output exceeds m_x bits");
    auto& c = counts[table_[x]];
    (x >> k ? c.second : c.first)++;
  }
  std::uint64_t diff = 0;
  injective_ = counts.size() == table_.size();
  lossy_ = true;
  for (const auto& [y, c] : counts) {
    diff += c.first > c.second ? c.first - c.second : 0;
    if (c.first + c.second < 2) lossy_ = false;
  }
  epsilon_ = probkit::ratio(diff, pow2(k));
  for (std::uint64_t r0 = 0; r0 < pow2(k) && !equivocation_; ++r0) {
    for (std::uint64_t r1 = 0; r1 < pow2(k); ++r1) {
      if (table_[r0] == table_[pow2(k) | r1]) {
        equivocation_ = std::pair{r0, r1};
        break;
      }
    }
  }
}

std::uint32_t Instance::commit(std::uint64_t b, std::uint64_t r) const {
  if (b > 1 || r >= pow2(k_)) throw DomainMismatch("IDC input out of range");
  return table_[(b << k_) | r];
}

bool Instance::verify(std::uint64_t c, std::uint64_t b, std::uint64_t r) const {
  return b <= 1 && r < pow2(k_) && table_[(b << k_) | r] == c;
}

std::string Instance::encode() const {
  std::string out;
  out.reserve(table_.size() * static_cast<std::size_t>((m_ + 3) / 4));
  for (std::uint32_t y : table_) out += hex_word(y, m_);
  return out;
}

Instance Instance::decode(std::string_view hex, int k, int output_bits) {
  const std::size_t width = static_cast<std::size_t>((output_bits + 3) / 4);
  if (hex.size() != pow2(1 + k) * width) throw ProtocolError("instance encoding has the wrong length");
  std::vector<std::uint32_t> table(pow2(1 + k));
  for (std::size_t i = 0; i < table.size(); ++i) {
    const std::uint64_t v = parse_hex_word(hex.substr(i * width, width));
    if (v > low_mask(output_bits)) throw ProtocolError("instance entry exceeds m_x bits");
    table[i] = static_cast<std::uint32_t>(v);
  }
  return Instance(k, output_bits, std::move(table));
}

PromiseProblem::PromiseProblem(SzkParams params) : params_(std::move(params)) {
  validate(params_);
  const std::uint64_t pool = pow2(params_.coin_bits - params_.class_bits);
  for (std::uint64_t i = 0; i < pool; ++i) {
    bool made = false;
    for (int attempt = 0; attempt < kMaxAttempts && !made; ++attempt) {
      Rng rng(derive_seed(params_.seed, {1, i, static_cast<std::uint64_t>(attempt)}));
      Instance x = random_lossy(params_, rng);
      if (classify(x) == Classification::yes) {
        yes_pool_.push_back(std::move(x));
        made = true;
      }
    }
    if (!made) throw ConfigError("could not sample a YES instance within the tolerance");
    Rng rng(derive_seed(params_.seed, {2, i}));
    no_pool_.push_back(random_injective(params_, rng));
  }
  std::uint64_t yes = 0;
  for (std::uint64_t r = 0; r < coin_space(); ++r) yes += classify(sample(r)) == Classification::yes;
  yes_rate_ = probkit::ratio(yes, coin_space());
}

Classification PromiseProblem::classify(const Instance& x) const {
  if (x.k() != params_.k) return Classification::outside;
  if (x.injective()) return Classification::no;
  if (x.lossy() && x.epsilon() <= params_.yes_tolerance) return Classification::yes;
  return Classification::outside;
}

bool PromiseProblem::sample_is_yes(std::uint64_t r) const {
  if (r >= coin_space()) throw DomainMismatch("sampler coins out of range");
  return (r >> (params_.coin_bits - params_.class_bits)) < params_.yes_count;
}

const Instance& PromiseProblem::sample(std::uint64_t r) const {
  const std::uint64_t index = r & low_mask(params_.coin_bits - params_.class_bits);
  return sample_is_yes(r) ? yes_pool_[index] : no_pool_[index];
}

const Instance* PromiseProblem::find(const Instance& x) const {
  for (const auto* pool : {&yes_pool_, &no_pool_}) {
    for (const Instance& y : *pool) {
      if (y == x) return &y;
    }
  }
  return nullptr;
}

}  // namespace dcrhlab::szkcommit
