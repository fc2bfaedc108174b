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

#include <gtest/gtest.h>

#include <cmath>

#include "dcrhlab/common/bits.hpp"
#include "dcrhlab/common/error.hpp"
#include "dcrhlab/common/rng.hpp"
#include "dcrhlab/iegen/entropy.hpp"
#include "dcrhlab/iegen/toys.hpp"

namespace dcrhlab::iegen {
namespace {

using probkit::LogLinear;
using probkit::Rational;

LogLinear bits(long v) { return LogLinear(Rational(v)); }

// (parity(x), x) on two-bit seeds.
BlockGenerator parity_pair() {
  return BlockGenerator("parity-pair", 1, 0, 2, {1, 2}, [](std::uint64_t, std::uint64_t x) {
    return std::vector<std::uint64_t>{static_cast<std::uint64_t>(parity(x)), x};
  });
}

// Random two-block generator over z in [0, 3): a table of small outputs.
BlockGenerator random_block_generator(std::uint64_t seed) {
  auto table = std::make_shared<std::vector<std::vector<std::uint64_t>>>();
  Rng rng(seed);
  for (std::uint64_t i = 0; i < 3 * 32; ++i) table->push_back({rng.below(3), rng.below(5)});
  return BlockGenerator("random", 3, 2, 5, {2, 3}, [table](std::uint64_t z, std::uint64_t x) {
    return (*table)[z * 32 + x];
  });
}

// Random online generator whose second alphabet depends on the first coin.
OnlineGenerator random_online_generator(std::uint64_t seed) {
  Rng rng(seed);
  auto first = std::make_shared<std::vector<std::uint64_t>>();
  auto sizes = std::make_shared<std::vector<std::uint64_t>>();
  for (int i = 0; i < 2 * 6; ++i) {
    first->push_back(rng.below(3));
    sizes->push_back(1 + rng.below(5));
  }
  const std::uint64_t salt = rng.next();
  return OnlineGenerator(
      "random-online", 2, 2,
      [sizes](int i, std::uint64_t z, std::span<const std::uint64_t> prior) {
        return i == 0 ? std::uint64_t{6} : (*sizes)[z * 6 + prior[0]];
      },
      [first, salt](int i, std::uint64_t z, std::span<const std::uint64_t> coins) {
        if (i == 0) return Block{(*first)[z * 6 + coins[0]], 2};
        return Block{splitmix64(salt ^ (z * 97 + coins[0] * 13 + coins[1])) % 3, 2};
      });
}

TEST(BlockGeneratorTest, RejectsMalformedOutputs) {
  BlockGenerator wide("wide", 1, 0, 2, {1}, [](std::uint64_t, std::uint64_t x) {
    return std::vector<std::uint64_t>{x};
  });
  EXPECT_NO_THROW(wide(0, 1));
  EXPECT_THROW(wide(0, 3), InvariantViolation);
  BlockGenerator short_output("short", 1, 0, 2, {1, 1}, [](std::uint64_t, std::uint64_t) {
    return std::vector<std::uint64_t>{0};
  });
  EXPECT_THROW(short_output(0, 0), InvariantViolation);
}

TEST(RealSampleEntropyTest, Examples) {
  const auto id = identity_generator(4);
  for (std::uint64_t x = 0; x < 16; ++x) {
    const std::vector<std::uint64_t> y{x};
    EXPECT_EQ(real_sample_entropy<Rational>(id, 0, y), bits(4));
  }
  const std::vector<std::uint64_t> zero{0};
  EXPECT_TRUE(real_sample_entropy<Rational>(constant_generator(3, 2), 0, zero).is_zero());

  // H_Y(0) = 1 and H_{X|Y}(00 | 0) = 1.
  const std::vector<std::uint64_t> y{0, 0b00};
  EXPECT_EQ(real_sample_entropy<Rational>(parity_pair(), 0, y), bits(2));
  const std::vector<std::uint64_t> bad{0, 0b01};
  EXPECT_THROW(real_sample_entropy<Rational>(parity_pair(), 0, bad), OutOfSupport);
}

TEST(RealEntropyTest, Examples) {
  EXPECT_EQ(real_entropy<Rational>(identity_generator(5)).conditional, bits(5));
  EXPECT_TRUE(real_entropy<Rational>(constant_generator(5, 3)).conditional.is_zero());
  EXPECT_EQ(real_entropy<Rational>(xor_generator(4)).conditional, bits(4));
  EXPECT_EQ(real_entropy<Rational>(parity_pair()).conditional, bits(2));
}

TEST(RealEntropyTest, RoutesAgreeOnRandomGenerators) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto g = random_block_generator(seed);
    const auto exact = real_entropy<Rational>(g);
    EXPECT_EQ(exact.conditional, exact.by_samples);
    const auto fl = real_entropy<double>(g);
    EXPECT_NEAR(fl.conditional, exact.conditional.to_double(), 1e-12);
  }
}

TEST(AccessibleEntropyTest, Examples) {
  const auto det = deterministic_generator(3, 2);
  for_each_transcript(det, [&](const Transcript& t, std::uint64_t) {
    EXPECT_TRUE(accessible_sample_entropy<Rational>(det, t).is_zero());
  });
  EXPECT_TRUE(accessible_entropy<Rational>(det).by_blocks.is_zero());

  const auto echo = echo_generator(3);
  for_each_transcript(echo, [&](const Transcript& t, std::uint64_t) {
    EXPECT_EQ(accessible_sample_entropy<Rational>(echo, t), bits(3));
  });
  EXPECT_EQ(accessible_entropy<Rational>(echo).by_blocks, bits(3));

  // One bit for the parity block; the seed block is fixed by the first coins.
  const auto honest = honest_wrap(parity_pair());
  for_each_transcript(honest, [&](const Transcript& t, std::uint64_t den) {
    EXPECT_EQ(den, 4U);
    EXPECT_EQ(accessible_sample_entropy<Rational>(honest, t), bits(1));
  });
  EXPECT_EQ(accessible_entropy<Rational>(honest).by_blocks, bits(1));
}

TEST(AccessibleEntropyTest, RoutesAgreeOnRandomGenerators) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto gt = random_online_generator(seed);
    const auto exact = accessible_entropy<Rational>(gt);
    EXPECT_EQ(exact.by_blocks, exact.by_transcripts);
    const auto fl = accessible_entropy<double>(gt);
    EXPECT_NEAR(fl.by_blocks, exact.by_blocks.to_double(), 1e-12);
  }
}

TEST(AccessibleEntropyTest, InvalidTranscriptIsRejected) {
  const auto echo = echo_generator(2);
  Transcript t = run_online(echo, 0, std::vector<std::uint64_t>{1, 0});
  EXPECT_TRUE(transcript_valid(echo, t));
  t.blocks[1].value = 1;
  EXPECT_FALSE(transcript_valid(echo, t));
  EXPECT_THROW(accessible_sample_entropy<Rational>(echo, t), InvariantViolation);
  EXPECT_THROW(run_online(echo, 0, std::vector<std::uint64_t>{2, 0}), OutOfSupport);
}

TEST(AccessibleEntropyTest, HonestWrapsStayBelowRealEntropy) {
  for (const auto& g : {identity_generator(3), constant_generator(3, 1), xor_generator(3), parity_pair(),
                        random_block_generator(4), random_block_generator(9)}) {
    const auto gt = honest_wrap(g);
    ASSERT_TRUE(check_consistent(gt, g).consistent);
    EXPECT_LE(accessible_entropy<double>(gt).by_blocks, real_entropy<double>(g).conditional + 1e-9) << g.name();
  }
}

TEST(ConsistencyTest, Examples) {
  const auto g = parity_pair();
  EXPECT_TRUE(check_consistent(honest_wrap(g), g).consistent);

  OnlineGenerator long_block(
      "long", 1, 2,
      [](int i, std::uint64_t, std::span<const std::uint64_t>) { return i == 0 ? std::uint64_t{4} : 1; },
      [](int i, std::uint64_t, std::span<const std::uint64_t> coins) {
        return i == 0 ? Block{static_cast<std::uint64_t>(parity(coins[0])), 1} : Block{coins[0], 3};
      });
  const auto c1 = check_consistent(long_block, g);
  EXPECT_FALSE(c1.consistent);
  ASSERT_TRUE(c1.counterexample.has_value());
  EXPECT_EQ(c1.counterexample->blocks[1].length, 3);

  // Emits (y, x) with parity(x) != y whenever the coin is odd.
  OnlineGenerator liar(
      "liar", 1, 2,
      [](int i, std::uint64_t, std::span<const std::uint64_t>) { return i == 0 ? std::uint64_t{4} : 1; },
      [](int i, std::uint64_t, std::span<const std::uint64_t> coins) {
        return i == 0 ? Block{0, 1} : Block{coins[0], 2};
      });
  const auto c2 = check_consistent(liar, g);
  EXPECT_FALSE(c2.consistent);
  ASSERT_TRUE(c2.counterexample.has_value());
  EXPECT_NE(parity(c2.counterexample->blocks[1].value), 0);
}

TEST(ConsistencyTest, ConsistentTranscriptsRecompute) {
  const auto g = random_block_generator(3);
  const auto gt = honest_wrap(g);
  for_each_transcript(gt, [&](const Transcript& t, std::uint64_t) {
    EXPECT_TRUE(transcript_valid(gt, t));
    const auto y = g(t.z, t.coins[0]);
    EXPECT_EQ(t.blocks[0].value, y[0]);
    EXPECT_EQ(t.blocks[1].value, y[1]);
  });
}

TEST(MinEntropyTest, Predicate) {
  const auto id = identity_generator(4);
  EXPECT_TRUE(has_real_min_entropy(id, 0, 4, 0));
  EXPECT_FALSE(has_real_min_entropy(id, 0, 4.5, 0.5));
  // Parity block carries one bit; the seed block given the parity carries one more.
  EXPECT_TRUE(has_real_min_entropy(parity_pair(), 1, 1, 0));
  EXPECT_FALSE(has_real_min_entropy(constant_generator(3, 1), 0, 0.5, 0.99));
  EXPECT_TRUE(has_real_min_entropy(constant_generator(3, 1), 0, 0.5, 1.0));
}

}  // namespace
}  // namespace dcrhlab::iegen
