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
#include <set>
#include <sstream>

#include "dcrhlab/common/error.hpp"
#include "dcrhlab/hashfam/game.hpp"
#include "dcrhlab/probkit/measures.hpp"

namespace dcrhlab::hashfam {
namespace {

using probkit::ExactDist;

TEST(PreimageTest, Examples) {
  const auto id = identity_function(4);
  for (std::uint64_t y = 0; y < 16; ++y) EXPECT_EQ(preimage_set(id, y), std::vector<std::uint64_t>{y});

  const auto c = constant_function(3, 2, 2);
  EXPECT_EQ(preimage_set(c, 2).size(), 8U);
  EXPECT_TRUE(preimage_set(c, 1).empty());

  const auto par = parity_function(2);
  EXPECT_EQ(preimage_set(par, 0), (std::vector<std::uint64_t>{0b00, 0b11}));
  EXPECT_EQ(preimage_set(par, 1), (std::vector<std::uint64_t>{0b01, 0b10}));
}

TEST(PreimageTest, ClassesPartitionTheInputSpace) {
  for (FamilyKind kind : toy_families()) {
    for (int n = 1; n <= 8; ++n) {
      const auto family = make_family({.kind = kind, .n = n, .keys = 3, .seed = 5});
      for (const auto& h : family.keys()) {
        std::vector<int> hits(h.input_space(), 0);
        for (std::uint64_t y = 0; y < h.output_space(); ++y) {
          for (std::uint64_t x : preimage_set(h, y)) {
            EXPECT_EQ(h(x), y);
            ++hits[x];
          }
        }
        EXPECT_EQ(std::count(hits.begin(), hits.end(), 1), static_cast<long>(hits.size()));
      }
    }
  }
}

TEST(PreimageTest, CapIsEnforced) {
  const auto h = identity_function(16);
  EXPECT_THROW(preimage_set(h, 0), CapExceeded);
  EXPECT_NO_THROW(preimage_set(h, 0, Caps{.max_input_bits = 16}));
  EXPECT_THROW(make_family({.kind = FamilyKind::uniform, .n = 15}), CapExceeded);
}

TEST(FamilyTest, AffineMapsAreAffine) {
  const auto family = make_family({.kind = FamilyKind::affine, .n = 6, .keys = 4, .seed = 9});
  for (const auto& h : family.keys()) {
    for (std::uint64_t x = 0; x < 64; x += 3) {
      for (std::uint64_t y = 0; y < 64; y += 5) {
        for (std::uint64_t z = 0; z < 64; z += 7) EXPECT_EQ(h(x) ^ h(y) ^ h(z), h(x ^ y ^ z));
      }
    }
    // Every class of an affine map is a coset of the kernel.
    const auto size = h.class_members(0).size();
    for (std::size_t c = 0; c < h.class_count(); ++c) EXPECT_EQ(h.class_members(c).size(), size);
  }
}

TEST(FamilyTest, Degree2SecondDerivativesAreConstant) {
  const auto family = make_family({.kind = FamilyKind::degree2, .n = 5, .keys = 3, .seed = 4});
  for (const auto& h : family.keys()) {
    for (std::uint64_t a = 1; a < 32; ++a) {
      for (std::uint64_t b = 1; b < 32; ++b) {
        auto d2 = [&](std::uint64_t x) { return h(x) ^ h(x ^ a) ^ h(x ^ b) ^ h(x ^ a ^ b); };
        for (std::uint64_t x = 1; x < 32; ++x) ASSERT_EQ(d2(x), d2(0));
      }
    }
  }
}

TEST(FamilyTest, SeededFamiliesAreReproducible) {
  const FamilySpec spec{.kind = FamilyKind::uniform, .n = 6, .keys = 3, .seed = 77};
  const auto a = make_family(spec);
  const auto b = make_family(spec);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.key(i), b.key(i));
  EXPECT_FALSE(a.key(0) == a.key(1));
  EXPECT_EQ(make_family({.kind = FamilyKind::constant, .n = 3}).size(), 2U);
  EXPECT_THROW(parse_family("sha256"), ConfigError);
}

TEST(FamilyTest, TruthTableCsvRoundTrip) {
  const auto h = make_family({.kind = FamilyKind::degree2, .n = 5, .seed = 3}).key(0);
  std::stringstream ss;
  h.write_csv(ss);
  EXPECT_EQ(ss.str().substr(0, 26), "input_index,output_index\n0");
  EXPECT_EQ(HashFunction::read_csv(ss, 5, 4), h);

  std::stringstream partial("input_index,output_index\n00,1\n");
  EXPECT_THROW(HashFunction::read_csv(partial, 1, 1), ConfigError);
}

TEST(ColTest, Examples) {
  const auto id = col_distribution<Rational>(identity_function(3));
  EXPECT_EQ(id.pairs().support_size(), 8U);
  for (std::uint64_t x = 0; x < 8; ++x) EXPECT_EQ(id.mass(x, x), Rational(1, 8));

  const auto c = col_distribution<Rational>(constant_function(3, 1, 0));
  EXPECT_EQ(c.pairs(), ExactDist::uniform(64));

  const auto par = col_distribution<Rational>(parity_function(2));
  EXPECT_EQ(par.pairs().support_size(), 8U);
  for (const auto& [code, w] : par.pairs().support()) EXPECT_EQ(w, Rational(1, 8));
  EXPECT_EQ(par.mass(0b00, 0b11), Rational(1, 8));
  EXPECT_EQ(par.mass(0b00, 0b01), 0);
}

TEST(ColTest, MarginalsOnEveryToyFamily) {
  for (FamilyKind kind : toy_families()) {
    for (int n = 1; n <= 8; ++n) {
      const auto family = make_family({.kind = kind, .n = n, .keys = 2, .seed = 12});
      for (const auto& h : family.keys()) {
        const auto col = col_distribution<Rational>(h);
        ASSERT_EQ(col.first(), ExactDist::uniform(h.input_space()));
        for (std::uint64_t x1 = 0; x1 < h.input_space(); x1 += 1 + (x1 % 3)) {
          const auto cls = h.collision_class(x1);
          ASSERT_EQ(col.second_given_first(x1),
                    ExactDist::uniform_over(h.input_space(), {cls.begin(), cls.end()}));
        }
      }
    }
  }
}

TEST(ColSampleTest, IdentityAndParity) {
  Rng rng(1);
  const auto id = identity_function(5);
  const auto par = parity_function(4);
  for (int i = 0; i < 1000; ++i) {
    const auto [a, b] = col_sample(id, rng);
    EXPECT_EQ(a, b);
    const auto [x1, x2] = col_sample(par, rng);
    EXPECT_EQ(par(x1), par(x2));
  }
}

TEST(ColSampleTest, ConstantFamilyChiSquare) {
  Rng rng(2024);
  const auto h = constant_function(3, 1, 1);
  std::vector<double> counts(64, 0);
  const int samples = 100000;
  for (int i = 0; i < samples; ++i) {
    const auto [a, b] = col_sample(h, rng);
    counts[a * 8 + b] += 1;
  }
  double chi2 = 0;
  const double expected = samples / 64.0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // Chi-square with 63 degrees of freedom: mean 63, standard deviation sqrt(126).
  EXPECT_LT(chi2, 63 + 3 * std::sqrt(126.0));
}

TEST(AdversaryTest, Examples) {
  const auto family = make_family({.kind = FamilyKind::uniform, .n = 4, .keys = 3, .seed = 8});
  const auto col = col_adversary(family);
  for (const auto& h : family.keys()) {
    EXPECT_EQ(adversary_distribution<Rational>(col, h), col_distribution<Rational>(h));
  }
  const auto fixed = adversary_distribution<Rational>(fixed_pair_adversary(0, 0), family.key(0));
  EXPECT_EQ(fixed.pairs(), ExactDist::point(256, 0));

  const auto id = identity_function(4);
  EXPECT_EQ(adversary_distribution<Rational>(diagonal_adversary(4), id), col_distribution<Rational>(id));

  Adversary wild{"wild", 1, [](const HashFunction&, std::uint64_t) { return Pair{99, 0}; }};
  EXPECT_THROW(adversary_distribution<Rational>(wild, id), InvariantViolation);
  Adversary huge{"huge", std::uint64_t{1} << 30, wild.run};
  EXPECT_THROW(adversary_distribution<Rational>(huge, id), CapExceeded);
}

TEST(GameTest, ColAdversaryHasZeroDistance) {
  for (FamilyKind kind : toy_families()) {
    const auto family = make_family({.kind = kind, .n = 5, .keys = 3, .seed = 31});
    const auto r = dcrh_distance(family, col_adversary(family));
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.exact_distance, 0);
    EXPECT_EQ(r.joint_distance, 0);
  }
}

TEST(GameTest, FixedPairOnIdentity) {
  const HashFamily family("identity", 3, 3, 0, {identity_function(3)});
  const auto r = dcrh_distance(family, fixed_pair_adversary(0, 0));
  EXPECT_EQ(r.exact_distance, Rational(7, 8));
  EXPECT_DOUBLE_EQ(r.distance, 0.875);
  EXPECT_FALSE(r.within_threshold());
}

TEST(GameTest, DiagonalOnParity) {
  const auto h = parity_function(2);
  const HashFamily family("parity", 2, 1, 0, {h});
  // Independent oracle: sum |A - Col| over all 16 pairs by hand.
  Rational sum = 0;
  for (std::uint64_t a = 0; a < 4; ++a) {
    for (std::uint64_t b = 0; b < 4; ++b) {
      const Rational adv = a == b ? Rational(1, 4) : Rational(0);
      const Rational col = h(a) == h(b) ? Rational(1, 8) : Rational(0);
      sum += abs(adv - col);
    }
  }
  const auto r = dcrh_distance(family, diagonal_adversary(2));
  EXPECT_EQ(r.exact_distance, sum / 2);
  EXPECT_EQ(r.exact_distance, Rational(1, 2));
}

TEST(GameTest, PerKeyAverageMatchesJointDistance) {
  const auto family = make_family({.kind = FamilyKind::degree2, .n = 4, .keys = 5, .seed = 2});
  const auto r = dcrh_distance(family, diagonal_adversary(4));
  Rational sum = 0;
  for (const auto& d : r.exact_per_h) sum += d;
  EXPECT_EQ(sum / 5, r.exact_distance);
  EXPECT_EQ(r.joint_distance, r.exact_distance);
  const auto fl = dcrh_distance(family, diagonal_adversary(4), {.arithmetic = Arithmetic::floating});
  EXPECT_NEAR(fl.distance, r.distance, 1e-12);
}

TEST(GameTest, MonteCarloWithinConfidenceInterval) {
  for (FamilyKind kind : {FamilyKind::uniform, FamilyKind::constant, FamilyKind::affine}) {
    const auto family = make_family({.kind = kind, .n = 3, .keys = 2, .seed = 6});
    for (const auto& adv : {diagonal_adversary(3), fixed_pair_adversary(1, 1), col_adversary(family)}) {
      const auto exact = dcrh_distance(family, adv);
      const auto mc = dcrh_distance(family, adv, {.monte_carlo = true, .samples = 20000, .seed = 3});
      EXPECT_TRUE(mc.monte_carlo);
      EXPECT_LE(std::abs(mc.distance - exact.distance), mc.ci_half_width) << family.name() << " " << adv.name;
    }
  }
}

}  // namespace
}  // namespace dcrhlab::hashfam
