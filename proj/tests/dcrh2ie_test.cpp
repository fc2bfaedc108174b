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

#include "dcrhlab/common/error.hpp"
#include "dcrhlab/dcrh2ie/reduction.hpp"

namespace dcrhlab::dcrh2ie {
namespace {

using hashfam::FamilyKind;
using probkit::ExactDist;
using probkit::LogLinear;
using probkit::Rational;

std::shared_ptr<const HashFamily> family(FamilyKind kind, int n, int keys = 3, std::uint64_t seed = 17) {
  return std::make_shared<const HashFamily>(hashfam::make_family({.kind = kind, .n = n, .keys = keys, .seed = seed}));
}

TEST(TwoBlockGeneratorTest, Examples) {
  const auto id = family(FamilyKind::identity, 3);
  const auto g = build_two_block_generator(id);
  EXPECT_EQ(g.block_lengths(), (std::vector<int>{3, 3}));
  for (std::uint64_t x = 0; x < 8; ++x) EXPECT_EQ(g(0, x), (std::vector<std::uint64_t>{x, x}));
  EXPECT_EQ(iegen::real_entropy<Rational>(g).conditional, LogLinear(Rational(3)));

  const auto c = build_two_block_generator(family(FamilyKind::constant, 3));
  EXPECT_EQ(c.z_space(), 2U);
  EXPECT_EQ(iegen::real_entropy<Rational>(c).conditional, LogLinear(Rational(3)));

  const auto par = build_two_block_generator(family(FamilyKind::parity, 2));
  EXPECT_EQ(iegen::real_entropy<Rational>(par).conditional, LogLinear(Rational(2)));
}

TEST(TwoBlockGeneratorTest, RealEntropyIsNOnEveryFamily) {
  for (FamilyKind kind : hashfam::toy_families()) {
    for (int n = 2; n <= 7; ++n) {
      const auto g = build_two_block_generator(family(kind, n));
      EXPECT_EQ(iegen::real_entropy<Rational>(g).conditional, LogLinear(Rational(n)));
    }
  }
}

TEST(GeneratorSuiteTest, Consistency) {
  for (FamilyKind kind : hashfam::toy_families()) {
    const auto f = family(kind, 4);
    const auto g = build_two_block_generator(f);
    for (GeneratorKind gk : consistent_generators()) {
      EXPECT_TRUE(iegen::check_consistent(make_generator(gk, f), g).consistent) << f->name() << " " << generator_name(gk);
    }
    const auto cheat = iegen::check_consistent(make_generator(GeneratorKind::cheating_length, f), g);
    EXPECT_FALSE(cheat.consistent);
    const auto liar = iegen::check_consistent(make_generator(GeneratorKind::liar, f), g);
    EXPECT_FALSE(liar.consistent);
    ASSERT_TRUE(liar.counterexample.has_value());
    const auto& t = *liar.counterexample;
    EXPECT_NE(f->key(t.z)(t.blocks[1].value), t.blocks[0].value);
  }
  EXPECT_EQ(parse_generator("half"), GeneratorKind::half);
  EXPECT_THROW(parse_generator("oracle"), ConfigError);
}

TEST(GeneratorSuiteTest, HonestWrapOnParity) {
  const auto f = family(FamilyKind::parity, 2);
  const auto gt = make_generator(GeneratorKind::honest, f);
  iegen::for_each_transcript(gt, [&](const iegen::Transcript& t, std::uint64_t) {
    EXPECT_EQ(iegen::accessible_sample_entropy<Rational>(gt, t), LogLinear(Rational(1)));
  });
  EXPECT_EQ(iegen::accessible_entropy<Rational>(gt).by_blocks, LogLinear(Rational(1)));
}

TEST(GeneratorSuiteTest, IdealGeneratorHasFullAccessibleEntropy) {
  for (FamilyKind kind : hashfam::toy_families()) {
    for (int n = 1; n <= 6; ++n) {
      const auto f = family(kind, n);
      EXPECT_EQ(iegen::accessible_entropy<Rational>(make_generator(GeneratorKind::ideal, f)).by_blocks,
                LogLinear(Rational(n)));
    }
  }
}

TEST(RewindingTest, StructuralLawMatchesTapeEnumeration) {
  for (FamilyKind kind : hashfam::toy_families()) {
    const auto f = family(kind, 3, 2);
    for (GeneratorKind gk : consistent_generators()) {
      const auto gt = make_generator(gk, f);
      const auto a = rewinding_adversary(gt, f);
      for (std::size_t z = 0; z < f->size(); ++z) {
        EXPECT_EQ(hashfam::adversary_distribution<Rational>(a, f->key(z)), rewinding_distribution<Rational>(gt, *f, z))
            << f->name() << " " << gt.name();
      }
    }
  }
}

TEST(RewindingTest, Examples) {
  const auto f = family(FamilyKind::uniform, 4);
  const auto ideal = make_generator(GeneratorKind::ideal, f);
  const auto report = hashfam::dcrh_distance(*f, rewinding_adversary(ideal, f));
  EXPECT_EQ(report.exact_distance, 0);
  for (std::size_t z = 0; z < f->size(); ++z) {
    EXPECT_EQ(rewinding_distribution<Rational>(ideal, *f, z), hashfam::col_distribution<Rational>(f->key(z)));
  }

  const auto honest = rewinding_distribution<Rational>(make_generator(GeneratorKind::honest, f), *f, 0);
  for (const auto& [code, w] : honest.pairs().support()) {
    const auto [x1, x2] = honest.split(code);
    EXPECT_EQ(x1, x2);
  }

  const auto cf = family(FamilyKind::constant, 3);
  const auto lazy = make_generator(GeneratorKind::lazy, cf);
  for (std::size_t z = 0; z < cf->size(); ++z) {
    EXPECT_EQ(rewinding_distribution<Rational>(lazy, *cf, z).pairs().support_size(), 1U);
  }
}

TEST(RewindingTest, InconsistentGeneratorIsRejected) {
  const auto f = family(FamilyKind::uniform, 3);
  const auto liar = make_generator(GeneratorKind::liar, f);
  EXPECT_THROW(rewinding_adversary(liar, f), InvariantViolation);
  EXPECT_THROW(gap_bound_check(liar, f), InvariantViolation);
  // Unchecked, the adversary's outputs stop colliding.
  const auto a = rewinding_adversary(liar, f, true);
  bool miss = false;
  for (std::uint64_t t = 0; t < a.tape_space; ++t) {
    const auto [x1, x2] = a.run(f->key(0), t);
    miss |= f->key(0)(x1) != f->key(0)(x2);
  }
  EXPECT_TRUE(miss);
}

TEST(FirstBlockKlTest, Examples) {
  for (FamilyKind kind : hashfam::toy_families()) {
    const auto f = family(kind, 4);
    EXPECT_EQ(first_block_check(make_generator(GeneratorKind::ideal, f), f).value, 0);
  }
  const auto cf = family(FamilyKind::constant, 3);
  EXPECT_EQ(first_block_check(make_generator(GeneratorKind::honest, cf), cf).value, 0);

  // Lazy on the constant family: point mass against uniform on 8 inputs.
  const auto lazy = first_block_check(make_generator(GeneratorKind::lazy, cf), cf);
  EXPECT_DOUBLE_EQ(lazy.value, 3);
  EXPECT_DOUBLE_EQ(lazy.by_entropy, 3);
  EXPECT_DOUBLE_EQ(gap_bound_check(make_generator(GeneratorKind::lazy, cf), cf).gap, 3);

  // On the identity family each y has a single preimage, so lazy is honest.
  const auto idf = family(FamilyKind::identity, 3);
  const auto id_report = gap_bound_check(make_generator(GeneratorKind::lazy, idf), idf);
  EXPECT_DOUBLE_EQ(id_report.kl1, 0);
  EXPECT_DOUBLE_EQ(id_report.gap, 0);
}

TEST(SecondBlockKlTest, Examples) {
  const auto uf = family(FamilyKind::uniform, 4);
  const auto ideal = second_block_check(make_generator(GeneratorKind::ideal, uf), uf);
  EXPECT_EQ(ideal.value, 0);
  EXPECT_TRUE(ideal.terms.depends_only_on_y);

  // Point mass against uniform on a class of two.
  const auto pf = family(FamilyKind::parity, 2);
  const auto honest = second_block_check(make_generator(GeneratorKind::honest, pf), pf);
  EXPECT_DOUBLE_EQ(honest.value, 1);
  EXPECT_FALSE(honest.terms.depends_only_on_y);

  const auto idf = family(FamilyKind::identity, 4);
  for (GeneratorKind gk : consistent_generators()) {
    EXPECT_EQ(second_block_check(make_generator(gk, idf), idf).value, 0) << generator_name(gk);
  }
}

TEST(GapBoundTest, Examples) {
  const auto uf = family(FamilyKind::degree2, 5);
  const auto ideal = gap_bound_check(make_generator(GeneratorKind::ideal, uf), uf);
  EXPECT_TRUE(ideal.ok());
  EXPECT_TRUE(ideal.gap_exactly_zero);
  EXPECT_TRUE(ideal.distance_exactly_zero);
  EXPECT_EQ(ideal.bound, 0);

  // Point mass against uniform over 64 pairs.
  const auto cf = family(FamilyKind::constant, 3);
  const auto lazy = gap_bound_check(make_generator(GeneratorKind::lazy, cf), cf);
  EXPECT_TRUE(lazy.ok());
  EXPECT_DOUBLE_EQ(lazy.gap, 3);
  EXPECT_DOUBLE_EQ(lazy.measured_distance, 63.0 / 64);
  EXPECT_DOUBLE_EQ(lazy.bound, 2 * std::sqrt(3.0));
  EXPECT_GE(lazy.bound, lazy.measured_distance);
}

TEST(GapBoundTest, SuiteSweepSatisfiesEveryInvariant) {
  for (FamilyKind kind : hashfam::toy_families()) {
    for (int n = 1; n <= 5; ++n) {
      const auto f = family(kind, n);
      for (GeneratorKind gk : consistent_generators()) {
        for (auto arithmetic : {probkit::Arithmetic::exact, probkit::Arithmetic::floating}) {
          const auto r = gap_bound_check(make_generator(gk, f), f, arithmetic);
          EXPECT_TRUE(r.ok()) << f->name() << " n=" << n << " " << r.generator << ": "
                              << (r.violations.empty() ? "" : r.violations.front());
          EXPECT_TRUE(r.collisions_valid);
          EXPECT_NEAR(r.first_block.value, r.first_block.by_entropy, 1e-9);
          EXPECT_NEAR(r.accessible, r.second_block.terms.block1_entropy + r.second_block.terms.block2_entropy, 1e-9);
        }
      }
    }
  }
}

TEST(GapBoundTest, ThresholdArithmetic) {
  const auto f = family(FamilyKind::uniform, 4);
  for (GeneratorKind gk : consistent_generators()) {
    const auto r = gap_bound_check(make_generator(gk, f), f);
    for (double p_inv : {0.01, 0.1, 0.5, 1.0, 3.0}) {
      if (r.gap <= q_inv_for(p_inv)) {
        EXPECT_LE(r.bound, p_inv + 1e-9);
      }
    }
    EXPECT_NEAR(r.p_inv, 2 * std::sqrt(r.q_inv), 1e-12);
  }
}

}  // namespace
}  // namespace dcrhlab::dcrh2ie
