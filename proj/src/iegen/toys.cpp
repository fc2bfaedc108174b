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

#include "dcrhlab/iegen/toys.hpp"

#include <memory>

#include "dcrhlab/common/bits.hpp"

namespace dcrhlab::iegen {

BlockGenerator identity_generator(int s) {
  return BlockGenerator("identity", 1, 0, s, {s}, [](std::uint64_t, std::uint64_t x) {
    return std::vector<std::uint64_t>{x};
  });
}

BlockGenerator constant_generator(int s, int len) {
  return BlockGenerator("constant", 1, 0, s, {len}, [](std::uint64_t, std::uint64_t) {
    return std::vector<std::uint64_t>{0};
  });
}

BlockGenerator xor_generator(int s) {
  return BlockGenerator("xor", pow2(s), s, s, {s}, [](std::uint64_t z, std::uint64_t x) {
    return std::vector<std::uint64_t>{x ^ z};
  });
}

OnlineGenerator honest_wrap(const BlockGenerator& g) {
  auto base = std::make_shared<const BlockGenerator>(g);
  return OnlineGenerator(
      "honest", g.z_space(), g.num_blocks(),
      [base](int i, std::uint64_t, std::span<const std::uint64_t>) {
        return i == 0 ? base->seed_space() : std::uint64_t{1};
      },
      [base](int i, std::uint64_t z, std::span<const std::uint64_t> coins) {
        return Block{(*base)(z, coins[0])[i], base->block_lengths()[i]};
      });
}

OnlineGenerator deterministic_generator(int blocks, int len) {
  return OnlineGenerator(
      "deterministic", 1, blocks, [](int, std::uint64_t, std::span<const std::uint64_t>) { return std::uint64_t{2}; },
      [len](int, std::uint64_t, std::span<const std::uint64_t>) { return Block{0, len}; });
}

OnlineGenerator echo_generator(int blocks) {
  return OnlineGenerator(
      "echo", 1, blocks, [](int, std::uint64_t, std::span<const std::uint64_t>) { return std::uint64_t{2}; },
      [](int i, std::uint64_t, std::span<const std::uint64_t> coins) { return Block{coins[i], 1}; });
}

}  // namespace dcrhlab::iegen
