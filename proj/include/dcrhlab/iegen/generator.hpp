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
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace dcrhlab::iegen {

struct Block {
  std::uint64_t value = 0;
  int length = 0;  // bits

  friend bool operator==(const Block&, const Block&) = default;
  friend auto operator<=>(const Block&, const Block&) = default;
};

// G: (z, x) -> (y_1, ..., y_m) with z uniform on [0, z_space) and x uniform on
// {0,1}^s.
class BlockGenerator {
 public:
  using Fn = std::function<std::vector<std::uint64_t>(std::uint64_t z, std::uint64_t x)>;

  BlockGenerator(std::string name, std::uint64_t z_space, int c_bits, int s_bits,
                 std::vector<int> block_lengths, Fn fn);

  const std::string& name() const { return name_; }
  std::uint64_t z_space() const { return z_space_; }
  int c_bits() const { return c_bits_; }
  int s_bits() const { return s_bits_; }
  std::uint64_t seed_space() const { return std::uint64_t{1} << s_bits_; }
  int num_blocks() const { return static_cast<int>(lengths_.size()); }
  const std::vector<int>& block_lengths() const { return lengths_; }

  // Checks every block against its declared length.
  std::vector<std::uint64_t> operator()(std::uint64_t z, std::uint64_t x) const;

 private:
  std::string name_;
  std::uint64_t z_space_;
  int c_bits_;
  int s_bits_;
  std::vector<int> lengths_;
  Fn fn_;
};

// Online generator: block i is computed from z and the coins r_1..r_i only.
// Coins for block i are uniform on [0, coin_space(i, z, r_<i)); letting the
// alphabet size depend on earlier coins allows exactly uniform choices from
// sets whose size is not a power of two.
class OnlineGenerator {
 public:
  using CoinSpaceFn = std::function<std::uint64_t(int i, std::uint64_t z, std::span<const std::uint64_t> prior)>;
  using BlockFn = std::function<Block(int i, std::uint64_t z, std::span<const std::uint64_t> coins)>;

  OnlineGenerator(std::string name, std::uint64_t z_space, int num_blocks, CoinSpaceFn coin_space,
                  BlockFn block);

  const std::string& name() const { return name_; }
  std::uint64_t z_space() const { return z_space_; }
  int num_blocks() const { return num_blocks_; }

  std::uint64_t coin_space(int i, std::uint64_t z, std::span<const std::uint64_t> prior) const;
  // coins.size() must be i + 1.
  Block block(int i, std::uint64_t z, std::span<const std::uint64_t> coins) const;

 private:
  std::string name_;
  std::uint64_t z_space_;
  int num_blocks_;
  CoinSpaceFn coin_space_;
  BlockFn block_;
};

struct Transcript {
  std::uint64_t z = 0;
  std::vector<std::uint64_t> coins;
  std::vector<Block> blocks;

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

std::string to_string(const Transcript& t);

// Runs the generator on explicit coins, checking each coin against its alphabet.
Transcript run_online(const OnlineGenerator& gt, std::uint64_t z, std::span<const std::uint64_t> coins);

// True iff every block of t is recomputed from (z, r_1..r_i).
bool transcript_valid(const OnlineGenerator& gt, const Transcript& t);

// Visits every transcript with its probability 1 / denominator.
void for_each_transcript(const OnlineGenerator& gt,
                         const std::function<void(const Transcript&, std::uint64_t denominator)>& visit,
                         std::uint64_t max_leaves = std::uint64_t{1} << 26);

}  // namespace dcrhlab::iegen
