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

#include <array>

#include "dcrhlab/common/bits.hpp"
#include "dcrhlab/common/error.hpp"
#include "dcrhlab/dcrh2ie/reduction.hpp"

namespace dcrhlab::dcrh2ie {
namespace {

using iegen::Block;
using Coins = std::span<const std::uint64_t>;

constexpr std::array<std::pair<GeneratorKind, std::string_view>, 7> kNames = {{
    {GeneratorKind::honest, "honest"},
    {GeneratorKind::ideal, "ideal"},
    {GeneratorKind::lazy, "lazy"},
    {GeneratorKind::skewed, "skewed"},
    {GeneratorKind::half, "half"},
    {GeneratorKind::cheating_length, "cheating_length"},
    {GeneratorKind::liar, "liar"},
}};

using Family = std::shared_ptr<const HashFamily>;

// Generators whose second block is x_index(u, y, r2) over a per-(z, r1)
// alphabet and whose first block is h(u) for the u encoded in r1.
OnlineGenerator two_block(std::string name, Family f, std::uint64_t first_space,
                          std::function<std::uint64_t(std::uint64_t r1)> first_input,
                          std::function<std::uint64_t(const hashfam::HashFunction&, std::uint64_t r1)> second_space,
                          std::function<Block(const hashfam::HashFunction&, std::uint64_t r1, std::uint64_t r2)> second,
                          std::uint64_t y_flip = 0) {
  return OnlineGenerator(
      std::move(name), f->size(), 2,
      [f, first_space, second_space](int i, std::uint64_t z, Coins prior) {
        return i == 0 ? first_space : second_space(f->key(z), prior[0]);
      },
      [f, first_input, second, y_flip](int i, std::uint64_t z, Coins coins) {
        const auto& h = f->key(z);
        if (i == 0) return Block{(h(first_input(coins[0])) ^ y_flip) & low_mask(f->m()), f->m()};
        return second(h, coins[0], coins[1]);
      });
}

}  // namespace

BlockGenerator build_two_block_generator(std::shared_ptr<const HashFamily> family) {
  const int n = family->n();
  const int m = family->m();
  return BlockGenerator("G", family->size(), family->key_bits(), n, {m, n},
                        [family](std::uint64_t z, std::uint64_t x) {
                          return std::vector<std::uint64_t>{family->key(z)(x), x};
                        });
}

std::string_view generator_name(GeneratorKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  throw ConfigError("unknown generator kind");
}

GeneratorKind parse_generator(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  throw ConfigError("unknown generator '" + std::string(name) + "'");
}

const std::vector<GeneratorKind>& consistent_generators() {
  static const std::vector<GeneratorKind> kinds = {GeneratorKind::honest, GeneratorKind::ideal,
                                                   GeneratorKind::lazy, GeneratorKind::skewed,
                                                   GeneratorKind::half};
  return kinds;
}

OnlineGenerator make_generator(GeneratorKind kind, std::shared_ptr<const HashFamily> family) {
  const int n = family->n();
  const std::uint64_t inputs = pow2(n);
  const std::string name(generator_name(kind));
  auto identity = [](std::uint64_t r) { return r; };
  auto one = [](const hashfam::HashFunction&, std::uint64_t) { return std::uint64_t{1}; };
  auto uniform_preimage_space = [](const hashfam::HashFunction& h, std::uint64_t u) {
    return static_cast<std::uint64_t>(h.collision_class(u).size());
  };
  auto uniform_preimage = [n](const hashfam::HashFunction& h, std::uint64_t u, std::uint64_t r) {
    return Block{h.collision_class(u)[r], n};
  };
  switch (kind) {
    case GeneratorKind::honest:
      return two_block(name, family, inputs, identity, one,
                       [n](const hashfam::HashFunction&, std::uint64_t u, std::uint64_t) { return Block{u, n}; });
    case GeneratorKind::ideal:
      return two_block(name, family, inputs, identity, uniform_preimage_space, uniform_preimage);
    case GeneratorKind::lazy:
      return two_block(name, family, inputs, identity, one,
                       [n](const hashfam::HashFunction& h, std::uint64_t u, std::uint64_t) {
                         return Block{h.collision_class(u)[0], n};
                       });
    case GeneratorKind::skewed: {
      // y = h(u with its low bit cleared), then a uniform preimage of y.
      auto clear = [](std::uint64_t u) { return u & ~std::uint64_t{1}; };
      return two_block(
          name, family, inputs, clear,
          [clear](const hashfam::HashFunction& h, std::uint64_t u) {
            return static_cast<std::uint64_t>(h.collision_class(clear(u)).size());
          },
          [n, clear](const hashfam::HashFunction& h, std::uint64_t u, std::uint64_t r) {
            return Block{h.collision_class(clear(u))[r], n};
          });
    }
    case GeneratorKind::half: {
      // Low coin bit selects the ideal or the honest second block.
      auto u_of = [](std::uint64_t r) { return r >> 1; };
      return two_block(
          name, family, 2 * inputs, u_of,
          [](const hashfam::HashFunction& h, std::uint64_t r) {
            return (r & 1) ? static_cast<std::uint64_t>(h.collision_class(r >> 1).size()) : std::uint64_t{1};
          },
          [n](const hashfam::HashFunction& h, std::uint64_t r, std::uint64_t r2) {
            return Block{(r & 1) ? h.collision_class(r >> 1)[r2] : (r >> 1), n};
          });
    }
    case GeneratorKind::cheating_length:
      return two_block(name, family, inputs, identity, one,
                       [n](const hashfam::HashFunction&, std::uint64_t u, std::uint64_t) { return Block{u, n + 1}; });
    case GeneratorKind::liar:
      // Announces a flipped hash value, then reveals u or u with its low bit flipped.
      return two_block(
          name, family, inputs, identity,
          [](const hashfam::HashFunction&, std::uint64_t) { return std::uint64_t{2}; },
          [n](const hashfam::HashFunction&, std::uint64_t u, std::uint64_t r) { return Block{u ^ r, n}; }, 1);
  }
  throw ConfigError("unknown generator kind");
}

}  // namespace dcrhlab::dcrh2ie
