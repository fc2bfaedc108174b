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

#include "dcrhlab/iegen/generator.hpp"

#include <sstream>

#include "dcrhlab/common/bits.hpp"
#include "dcrhlab/common/error.hpp"

namespace dcrhlab::iegen {

BlockGenerator::BlockGenerator(std::string name, std::uint64_t z_space, int c_bits, int s_bits,
                               std::vector<int> block_lengths, Fn fn)
    : name_(std::move(name)),
      z_space_(z_space),
      c_bits_(c_bits),
      s_bits_(s_bits),
      lengths_(std::move(block_lengths)),
      fn_(std::move(fn)) {
  if (z_space_ == 0) throw InvariantViolation("empty public-parameter space");
  if (s_bits_ < 0 || s_bits_ > 32) throw CapExceeded("seed length outside [0, 32]");
  if (lengths_.empty()) throw InvariantViolation("block generator without blocks");
  for (int l : lengths_) {
    if (l < 0 || l > 63) throw InvariantViolation("block length outside [0, 63]");
  }
}

std::vector<std::uint64_t> BlockGenerator::operator()(std::uint64_t z, std::uint64_t x) const {
  auto y = fn_(z, x);
  if (y.size() != lengths_.size()) throw InvariantViolation(name_ + ": wrong number of blocks");
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] > low_mask(lengths_[i])) throw InvariantViolation(name_ + ": block exceeds its length");
  }
  return y;
}

OnlineGenerator::OnlineGenerator(std::string name, std::uint64_t z_space, int num_blocks,
                                 CoinSpaceFn coin_space, BlockFn block)
    : name_(std::move(name)),
      z_space_(z_space),
      num_blocks_(num_blocks),
      coin_space_(std::move(coin_space)),
      block_(std::move(block)) {
  if (z_space_ == 0) throw InvariantViolation("empty public-parameter space");
  if (num_blocks_ < 1) throw InvariantViolation("online generator without blocks");
}

std::uint64_t OnlineGenerator::coin_space(int i, std::uint64_t z, std::span<const std::uint64_t> prior) const {
  if (prior.size() != static_cast<std::size_t>(i)) throw InvariantViolation("coin prefix has wrong length");
  const std::uint64_t v = coin_space_(i, z, prior);
  if (v == 0) throw InvariantViolation(name_ + ": empty coin alphabet");
  return v;
}

Block OnlineGenerator::block(int i, std::uint64_t z, std::span<const std::uint64_t> coins) const {
  if (coins.size() != static_cast<std::size_t>(i) + 1) throw InvariantViolation("coin prefix has wrong length");
  const Block b = block_(i, z, coins);
  if (b.length < 0 || b.length > 63 || b.value > low_mask(b.length)) {
    throw InvariantViolation(name_ + ": malformed block");
  }
  return b;
}

std::string to_string(const Transcript& t) {
  std::ostringstream out;
  out << "z=" << t.z;
  for (std::size_t i = 0; i < t.blocks.size(); ++i) {
    out << " r" << i + 1 << '=' << t.coins[i] << " y" << i + 1 << '=' << bit_string(t.blocks[i].value, t.blocks[i].length);
  }
  return out.str();
}

Transcript run_online(const OnlineGenerator& gt, std::uint64_t z, std::span<const std::uint64_t> coins) {
  if (z >= gt.z_space()) throw OutOfSupport("public parameter outside its space");
  if (coins.size() != static_cast<std::size_t>(gt.num_blocks())) throw InvariantViolation("wrong number of coins");
  Transcript t{z, {coins.begin(), coins.end()}, {}};
  for (int i = 0; i < gt.num_blocks(); ++i) {
    if (coins[i] >= gt.coin_space(i, z, coins.first(i))) throw OutOfSupport("coin outside its alphabet");
    t.blocks.push_back(gt.block(i, z, coins.first(i + 1)));
  }
  return t;
}

bool transcript_valid(const OnlineGenerator& gt, const Transcript& t) {
  if (t.coins.size() != static_cast<std::size_t>(gt.num_blocks()) || t.blocks.size() != t.coins.size()) {
    return false;
  }
  try {
    return run_online(gt, t.z, t.coins) == t;
  } catch (const OutOfSupport&) {
    return false;
  }
}

namespace {

struct Walker {
  const OnlineGenerator& gt;
  const std::function<void(const Transcript&, std::uint64_t)>& visit;
  std::uint64_t max_leaves;
  std::uint64_t leaves = 0;
  Transcript t;

  void walk(int i, std::uint64_t den) {
    if (i == gt.num_blocks()) {
      if (++leaves > max_leaves) throw CapExceeded(gt.name() + ": transcript enumeration exceeds cap");
      visit(t, den);
      return;
    }
    const std::uint64_t v = gt.coin_space(i, t.z, std::span(t.coins).first(i));
    if (den > (std::uint64_t{1} << 62) / v) throw CapExceeded(gt.name() + ": coin space too large");
    t.coins.push_back(0);
    t.blocks.emplace_back();
    for (std::uint64_t r = 0; r < v; ++r) {
      t.coins[i] = r;
      t.blocks[i] = gt.block(i, t.z, std::span(t.coins).first(i + 1));
      walk(i + 1, den * v);
    }
    t.coins.pop_back();
    t.blocks.pop_back();
  }
};

}  // namespace

void for_each_transcript(const OnlineGenerator& gt,
                         const std::function<void(const Transcript&, std::uint64_t)>& visit,
                         std::uint64_t max_leaves) {
  Walker w{gt, visit, max_leaves};
  for (std::uint64_t z = 0; z < gt.z_space(); ++z) {
    w.t = Transcript{z, {}, {}};
    w.walk(0, gt.z_space());
  }
}

}  // namespace dcrhlab::iegen
