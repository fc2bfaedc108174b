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

#include <map>
#include <sstream>

#include "dcrhlab/commitments/games.hpp"
#include "dcrhlab/common/bits.hpp"
#include "dcrhlab/common/error.hpp"
#include "dcrhlab/common/rng.hpp"

namespace dcrhlab::commitments {
namespace {

// Delta(f(0, .), f(1, .)) straight from the truth table.
Rational table_hiding(const FunctionCommitment& s, std::uint64_t key) {
  const int k = s.sender_coin_bits();
  Rational best = 0;
  for (std::uint64_t b0 = 0; b0 < pow2(s.plaintext_bits()); ++b0) {
    for (std::uint64_t b1 = b0 + 1; b1 < pow2(s.plaintext_bits()); ++b1) {
      std::map<std::uint64_t, long> diff;
      for (std::uint64_t r = 0; r < pow2(k); ++r) {
        ++diff[s.evaluate(key, (b0 << k) | r)];
        --diff[s.evaluate(key, (b1 << k) | r)];
      }
      long total = 0;
      for (const auto& [y, d] : diff) total += d > 0 ? d : 0;
      best = std::max(best, probkit::ratio(static_cast<std::uint64_t>(total), pow2(k)));
    }
  }
  return best;
}

// Pr[b != b'] for x uniform and x' uniform in its preimage, by a double loop.
Rational pairwise_rate(const FunctionCommitment& s, std::uint64_t key) {
  const int k = s.sender_coin_bits();
  const std::uint64_t space = pow2(s.plaintext_bits() + k);
  Rational total = 0;
  for (std::uint64_t x = 0; x < space; ++x) {
    long size = 0;
    long differ = 0;
    for (std::uint64_t x2 = 0; x2 < space; ++x2) {
      if (s.evaluate(key, x2) != s.evaluate(key, x)) continue;
      ++size;
      differ += (x2 >> k) != (x >> k);
    }
    total += probkit::ratio(static_cast<std::uint64_t>(differ), static_cast<std::uint64_t>(size));
  }
  return total / Rational(static_cast<long>(space));
}

TEST(FunctionCommitmentTest, Completeness) {
  const FunctionCommitment s(FunctionKind::random, 2, 6, 3);
  Rng rng(5);
  for (int i = 0; i < 10000; ++i) {
    const std::uint64_t b = rng.bits(2);
    const ProtocolRun run = run_protocol(s, b, rng.bits(6), rng.next());
    ASSERT_FALSE(run.com.aborted);
    ASSERT_EQ(s.verify(run.com, run.decom), b);
  }
}

TEST(FunctionCommitmentTest, RejectsWrongOpenings) {
  const FunctionCommitment s(FunctionKind::injective, 1, 4, 5);
  const ProtocolRun run = run_protocol(s, 1, 9, 0xABCDEF);
  EXPECT_EQ(s.verify(run.com, run.decom), 1U);
  EXPECT_FALSE(s.verify(run.com, {0, 9}).has_value());
  EXPECT_FALSE(s.verify(run.com, {1, 8}).has_value());
  EXPECT_FALSE(s.verify(run.com, {1, 16}).has_value());
  Transcript aborted = run.com;
  aborted.aborted = true;
  EXPECT_FALSE(s.verify(aborted, run.decom).has_value());
}

TEST(FunctionCommitmentTest, ConfigValidation) {
  EXPECT_THROW(FunctionCommitment(FunctionKind::injective, 1, 4, 3), ConfigError);
  EXPECT_THROW(FunctionCommitment(FunctionKind::plaintext, 2, 4, 3), ConfigError);
  EXPECT_THROW(FunctionCommitment(FunctionKind::random, 0, 4, 3), ConfigError);
  EXPECT_THROW(run_protocol(FunctionCommitment(FunctionKind::random, 1, 4, 3), 0, 16, 0), ConfigError);
  EXPECT_EQ(parse_function_kind("blind"), FunctionKind::blind);
  EXPECT_THROW(parse_function_kind("nope"), ConfigError);
}

TEST(SessionTest, MalformedMessageAborts) {
  const FunctionCommitment s(FunctionKind::random, 1, 4, 3);
  ReceiverSession receiver(s, 42);
  ASSERT_TRUE(receiver.my_turn());
  receiver.next();
  receiver.receive({Party::sender, 9, 3});
  EXPECT_EQ(receiver.phase(), SessionPhase::aborted);
  EXPECT_TRUE(receiver.transcript().aborted);
  EXPECT_FALSE(receiver.accept_opening({0, 0}).has_value());

  ReceiverSession wrong_party(s, 42);
  wrong_party.next();
  wrong_party.receive({Party::receiver, 1, 3});
  EXPECT_EQ(wrong_party.phase(), SessionPhase::aborted);

  SenderSession sender(s, 1, 3);
  EXPECT_FALSE(sender.my_turn());
  EXPECT_THROW(sender.next(), ProtocolError);
  EXPECT_THROW(sender.open(), ProtocolError);
}

TEST(SessionTest, HonestOpeningAccepted) {
  const FunctionCommitment s(FunctionKind::random, 1, 5, 3);
  SenderSession sender(s, 1, 17);
  ReceiverSession receiver(s, 99);
  sender.receive(receiver.next());
  receiver.receive(sender.next());
  ASSERT_EQ(receiver.phase(), SessionPhase::committed);
  EXPECT_EQ(sender.transcript(), receiver.transcript());
  EXPECT_EQ(receiver.accept_opening(sender.open()), 1U);
}

TEST(TranscriptTest, RoundTrip) {
  const FunctionCommitment s(FunctionKind::random, 3, 5, 7);
  const ProtocolRun run = run_protocol(s, 5, 3, 0x0123456789ABCDEFULL);
  const std::string text = serialize(run.com);
  EXPECT_EQ(text.substr(0, 2), "2|");
  EXPECT_EQ(parse_transcript(text), run.com);
  Transcript t = run.com;
  t.aborted = true;
  EXPECT_TRUE(parse_transcript(serialize(t)).aborted);
  EXPECT_THROW(parse_transcript("3|S3:5"), ProtocolError);
  EXPECT_THROW(parse_transcript("1|S3:55"), ProtocolError);
  EXPECT_THROW(parse_transcript("1|S3:9"), ProtocolError);
  EXPECT_THROW(parse_transcript("1|X3:5"), ProtocolError);
}

TEST(HidingTest, ExtremeSchemes) {
  EXPECT_EQ(hiding_distance(FunctionCommitment(FunctionKind::blind, 1, 5, 3), fixed_receiver(7)).epsilon, 0);
  EXPECT_EQ(hiding_distance(FunctionCommitment(FunctionKind::plaintext, 1, 5, 1), fixed_receiver(7)).epsilon, 1);
  EXPECT_EQ(hiding_distance(FunctionCommitment(FunctionKind::injective, 1, 5, 6), fixed_receiver(7)).epsilon, 1);
}

TEST(HidingTest, MatchesTruthTable) {
  for (int l : {1, 2}) {
    const FunctionCommitment s(FunctionKind::random, l, 6, 3);
    for (std::uint64_t key : sample_receiver_coins(3, 10)) {
      EXPECT_EQ(hiding_distance(s, fixed_receiver(key)).epsilon, table_hiding(s, key));
    }
  }
}

TEST(HidingTest, ShrinksWithCompression) {
  double prev = 2;
  for (int gap = 1; gap <= 4; ++gap) {
    const FunctionCommitment s(FunctionKind::random, 1, 8, 9 - gap);
    Rational sum = 0;
    const auto keys = sample_receiver_coins(11, 40);
    for (std::uint64_t key : keys) sum += hiding_distance(s, fixed_receiver(key)).epsilon;
    const double mean = probkit::to_double(sum) / static_cast<double>(keys.size());
    EXPECT_LT(mean, prev) << "k - m = " << gap;
    prev = mean;
  }
}

TEST(BindingTest, BruteForceMatchesEquivocableFraction) {
  const FunctionCommitment s(FunctionKind::random, 1, 5, 4);
  const auto coins = sample_receiver_coins(21, 6);
  const BindingResult r = binding_break_probability(s, brute_force_equivocator(s), coins);
  Rational expect = 0;
  for (std::uint64_t key : coins) {
    long good = 0;
    for (std::uint64_t x = 0; x < 64; ++x) {
      bool found = false;
      for (std::uint64_t x2 = 0; x2 < 64 && !found; ++x2) {
        found = (x2 >> 5) != (x >> 5) && s.evaluate(key, x2) == s.evaluate(key, x);
      }
      good += found;
    }
    expect += probkit::ratio(static_cast<std::uint64_t>(good), 64);
  }
  expect /= Rational(static_cast<long>(coins.size()));
  EXPECT_EQ(r.break_prob, expect);
  EXPECT_GT(r.break_prob, 0);
  ASSERT_FALSE(r.witnesses.empty());
  const Equivocation& w = r.witnesses.front();
  EXPECT_NE(s.verify(w.com, w.decom), s.verify(w.com, w.decom_prime));
}

TEST(BindingTest, PerfectlyBindingAndHonest) {
  const auto coins = sample_receiver_coins(2, 4);
  const FunctionCommitment inj(FunctionKind::injective, 1, 4, 5);
  EXPECT_EQ(binding_break_probability(inj, brute_force_equivocator(inj), coins).break_prob, 0);
  const FunctionCommitment rnd(FunctionKind::random, 1, 4, 2);
  EXPECT_EQ(binding_break_probability(rnd, honest_sender_strategy(rnd), coins).break_prob, 0);
}

TEST(ReductionTest, HashFamilyMirrorsScheme) {
  const FunctionCommitment s(FunctionKind::random, 1, 4, 3);
  const auto coins = sample_receiver_coins(8, 3);
  const hashfam::HashFamily fam = scheme_to_hash_family(s, coins);
  ASSERT_EQ(fam.size(), 3U);
  EXPECT_EQ(fam.n(), 5);
  EXPECT_EQ(fam.m(), 3);
  for (std::size_t i = 0; i < fam.size(); ++i) {
    for (std::uint64_t x = 0; x < 32; ++x) EXPECT_EQ(fam.key(i)(x), s.evaluate(coins[i], x));
  }
}

TEST(ReductionTest, RateMatchesPairwiseOracle) {
  const FunctionCommitment s(FunctionKind::random, 1, 6, 3);
  const auto coins = sample_receiver_coins(4, 10);
  const hashfam::HashFamily fam = scheme_to_hash_family(s, coins);
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const EquivocationReport r = col_equivocation_rate(s, fam.key(i));
    EXPECT_EQ(r.rate, pairwise_rate(s, coins[i]));
    EXPECT_EQ(r.epsilon, table_hiding(s, coins[i]));
    EXPECT_LE(r.eps_joint, r.epsilon);
    EXPECT_TRUE(r.rate_bound_holds);
    EXPECT_TRUE(r.markov_holds);
    EXPECT_TRUE(r.openings_valid);
  }
}

TEST(ReductionTest, ExtremeRates) {
  const auto coins = sample_receiver_coins(6, 2);
  const FunctionCommitment blind(FunctionKind::blind, 3, 4, 3);
  const hashfam::HashFamily bf = scheme_to_hash_family(blind, coins);
  const EquivocationReport b = col_equivocation_rate(blind, bf.key(0));
  EXPECT_EQ(b.epsilon, 0);
  EXPECT_EQ(b.same_rate, Rational(1, 8));
  EXPECT_EQ(string_variant_rate(blind, bf.key(0)), Rational(1, 8));
  EXPECT_EQ(b.markov_mass, 0);
  EXPECT_TRUE(b.markov_holds && b.string_bound_holds);

  const FunctionCommitment bit_blind(FunctionKind::blind, 1, 4, 3);
  EXPECT_EQ(col_equivocation_rate(bit_blind, scheme_to_hash_family(bit_blind, coins).key(0)).rate, Rational(1, 2));

  const FunctionCommitment plain(FunctionKind::plaintext, 1, 4, 1);
  const EquivocationReport p = col_equivocation_rate(plain, scheme_to_hash_family(plain, coins).key(1));
  EXPECT_EQ(p.rate, 0);
  EXPECT_EQ(p.epsilon, 1);
  EXPECT_EQ(p.markov_mass, 0);
  EXPECT_TRUE(p.rate_bound_holds && p.markov_holds);
}

TEST(ReductionTest, StringVariantBound) {
  const FunctionCommitment s(FunctionKind::random, 3, 6, 3);
  const auto coins = sample_receiver_coins(13, 10);
  const hashfam::HashFamily fam = scheme_to_hash_family(s, coins);
  for (const auto& h : fam.keys()) {
    const EquivocationReport r = col_equivocation_rate(s, h);
    EXPECT_TRUE(r.string_bound_holds);
    EXPECT_LE(probkit::to_double(r.same_rate), r.string_bound + 1e-12);
    EXPECT_EQ(r.same_rate, string_variant_rate(s, h));
  }
}

TEST(ReductionTest, RateCsv) {
  std::ostringstream out;
  write_rate_csv(out, {{"random-function", 0, 0.25, 0.5, -0.5}});
  EXPECT_EQ(out.str(), "scheme,h_index,epsilon,rate,bound\nrandom-function,0,0.25,0.5,-0.5\n");
}

}  // namespace
}  // namespace dcrhlab::commitments
