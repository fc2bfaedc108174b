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
#include <numbers>
#include <vector>

#include "dcrhlab/common/rng.hpp"
#include "dcrhlab/probkit/measures.hpp"

namespace dcrhlab::probkit {
namespace {

ExactDist exact(std::uint64_t domain, std::vector<std::pair<Outcome, Rational>> e) {
  return ExactDist::from_entries(domain, std::move(e));
}

// Random distribution on `size` outcomes with a random number of zeros.
FloatDist random_dist(Rng& rng, std::uint64_t size) {
  std::vector<FloatDist::Entry> e;
  double total = 0;
  std::vector<double> w(size);
  for (auto& v : w) {
    v = rng.below(4) == 0 ? 0.0 : rng.unit();
    total += v;
  }
  if (total == 0) {
    w[0] = 1;
    total = 1;
  }
  for (std::uint64_t i = 0; i < size; ++i) e.emplace_back(i, w[i] / total);
  return FloatDist::from_entries(size, std::move(e));
}

TEST(DistTest, RejectsInvalidMasses) {
  EXPECT_THROW(exact(2, {{0, Rational(1, 2)}}), InvariantViolation);
  EXPECT_THROW(exact(2, {{0, Rational(3, 2)}, {1, Rational(-1, 2)}}), InvariantViolation);
  EXPECT_THROW(exact(2, {{0, Rational(1, 2)}, {0, Rational(1, 2)}}), InvariantViolation);
  EXPECT_THROW(exact(2, {{2, Rational(1)}}), DomainMismatch);
  EXPECT_NO_THROW(FloatDist::from_entries(2, {{0, 0.5 + 1e-12}, {1, 0.5}}));
  EXPECT_THROW(FloatDist::from_entries(2, {{0, 0.5 + 1e-6}, {1, 0.5}}), InvariantViolation);
}

TEST(DistTest, ZeroMassesAreDroppedFromSupport) {
  auto d = exact(3, {{0, Rational(0)}, {1, Rational(1)}});
  EXPECT_EQ(d.support_size(), 1U);
  EXPECT_FALSE(d.in_support(0));
}

TEST(DistTest, JointMarginalsAndConditionals) {
  // X uniform on 2 bits (first), Y = top bit of X (second).
  auto j = JointDist<Rational>::from_pair_entries(
      4, 2, {{{0, 0}, Rational(1, 4)}, {{1, 0}, Rational(1, 4)}, {{2, 1}, Rational(1, 4)}, {{3, 1}, Rational(1, 4)}});
  EXPECT_EQ(j.first(), ExactDist::uniform(4));
  EXPECT_EQ(j.second(), ExactDist::uniform(2));
  EXPECT_EQ(j.first_given_second(1), ExactDist::uniform_over(4, {2, 3}));
  EXPECT_THROW(j.second_given_first(7), OutOfSupport);
}

TEST(StatDistanceTest, Examples) {
  auto u = ExactDist::uniform(4);
  EXPECT_EQ(stat_distance(u, u), 0);
  EXPECT_EQ(stat_distance(ExactDist::point(4, 1), ExactDist::point(4, 2)), 1);
  EXPECT_EQ(stat_distance(u, ExactDist::point(4, 0)), Rational(3, 4));
  EXPECT_THROW(stat_distance(u, ExactDist::uniform(8)), DomainMismatch);
}

TEST(StatDistanceTest, MetricAxiomsOnRandomTriples) {
  Rng rng(11);
  for (int t = 0; t < 500; ++t) {
    const std::uint64_t size = 1 + rng.below(16);
    auto p = random_dist(rng, size), q = random_dist(rng, size), r = random_dist(rng, size);
    const double pq = stat_distance(p, q), qp = stat_distance(q, p);
    EXPECT_GE(pq, 0.0);
    EXPECT_LE(pq, 1.0 + 1e-12);
    EXPECT_DOUBLE_EQ(pq, qp);
    EXPECT_LE(pq, stat_distance(p, r) + stat_distance(r, q) + 1e-12);
    EXPECT_EQ(stat_distance(p, p), 0.0);
  }
}

TEST(ShannonTest, Examples) {
  for (int k = 0; k <= 6; ++k) {
    EXPECT_EQ(shannon_entropy(ExactDist::uniform(std::uint64_t{1} << k)), LogLinear(Rational(k)));
  }
  EXPECT_TRUE(shannon_entropy(ExactDist::point(5, 3)).is_zero());

  // 2 - (3/4) log2 3, exactly.
  auto d = exact(2, {{0, Rational(3, 4)}, {1, Rational(1, 4)}});
  const LogLinear expected = LogLinear(Rational(2)) - LogLinear::log2_of(Rational(3)) * Rational(3, 4);
  EXPECT_EQ(shannon_entropy(d), expected);
  // Frozen from -(3/4 log2 3/4 + 1/4 log2 1/4) summed in the opposite order.
  EXPECT_NEAR(shannon_entropy(d).to_double(), 0.8112781244591328, 1e-15);
  EXPECT_NEAR(shannon_entropy(to_float(d)), 0.8112781244591328, 1e-15);
}

TEST(ShannonTest, BoundedByLogDomainAndMaximizedAtUniform) {
  Rng rng(5);
  for (int t = 0; t < 300; ++t) {
    const std::uint64_t size = 1 + rng.below(16);
    auto p = random_dist(rng, size);
    const double h = shannon_entropy(p);
    EXPECT_GE(h, 0.0);
    EXPECT_LE(h, std::log2(static_cast<double>(size)) + 1e-12);
    // log2|domain| - H(p) = D(p || uniform) >= 0 with equality only at uniform.
    EXPECT_NEAR(std::log2(static_cast<double>(size)) - h, kl_divergence(p, FloatDist::uniform(size)), 1e-9);
  }
}

TEST(SampleEntropyTest, Examples) {
  EXPECT_EQ(sample_entropy(ExactDist::uniform(8), 5), LogLinear(Rational(3)));
  EXPECT_EQ(sample_entropy(ExactDist::uniform(2), 1), LogLinear(Rational(1)));
  auto d = exact(2, {{0, Rational(3, 4)}, {1, Rational(1, 4)}});
  EXPECT_EQ(sample_entropy(d, 1), LogLinear(Rational(2)));
  EXPECT_THROW(sample_entropy(ExactDist::point(2, 0), 1), OutOfSupport);
}

TEST(CondEntropyTest, Examples) {
  auto x = exact(4, {{0, Rational(1, 2)}, {1, Rational(1, 4)}, {2, Rational(1, 8)}, {3, Rational(1, 8)}});
  auto y = ExactDist::uniform(2);
  auto indep = JointDist<Rational>::product(x, y);
  EXPECT_EQ(cond_entropy(indep), shannon_entropy(x));

  std::vector<std::pair<std::pair<Outcome, Outcome>, Rational>> diag;
  for (const auto& [o, w] : x.support()) diag.push_back({{o, o}, w});
  auto same = JointDist<Rational>::from_pair_entries(4, 4, diag);
  EXPECT_TRUE(cond_entropy(same).is_zero());

  auto first_bit = JointDist<Rational>::from_pair_entries(
      4, 2, {{{0, 0}, Rational(1, 4)}, {{1, 0}, Rational(1, 4)}, {{2, 1}, Rational(1, 4)}, {{3, 1}, Rational(1, 4)}});
  EXPECT_EQ(cond_entropy(first_bit), LogLinear(Rational(1)));
}

TEST(CondEntropyTest, BothRoutesAgreeOnRandomJoints) {
  Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    auto flat = random_dist(rng, 16);
    JointDist<double> j(4, 4, flat);
    EXPECT_NEAR(cond_entropy(j), cond_entropy_by_expectation(j), 1e-9);
  }
  // Exact mode: the two routes are the same symbolic value.
  auto j = JointDist<Rational>::from_pair_entries(
      3, 2, {{{0, 0}, Rational(1, 3)}, {{1, 0}, Rational(1, 6)}, {{1, 1}, Rational(1, 6)}, {{2, 1}, Rational(1, 3)}});
  EXPECT_EQ(cond_entropy(j), cond_entropy_by_expectation(j));
}

TEST(KlTest, Examples) {
  auto u = ExactDist::uniform(8);
  EXPECT_TRUE(kl_divergence(u, u).is_zero());
  auto p = exact(8, {{0, Rational(1, 2)}, {3, Rational(1, 4)}, {5, Rational(1, 4)}});
  EXPECT_EQ(kl_divergence(p, u), LogLinear(Rational(3)) - shannon_entropy(p));
  EXPECT_TRUE(kl_divergence(ExactDist::point(8, 1), ExactDist::point(8, 2)).is_infinite());
  EXPECT_TRUE(std::isinf(kl_divergence(FloatDist::point(8, 1), FloatDist::point(8, 2))));
  EXPECT_THROW(kl_divergence(u, ExactDist::uniform(4)), DomainMismatch);
}

TEST(KlTest, NonNegativeWithEqualityOnlyAtIdentity) {
  Rng rng(3);
  for (int t = 0; t < 500; ++t) {
    const std::uint64_t size = 1 + rng.below(16);
    auto p = random_dist(rng, size), q = random_dist(rng, size);
    const double d = kl_divergence(p, q);
    EXPECT_GE(d, 0.0);
    EXPECT_NEAR(kl_divergence(p, p), 0.0, 1e-12);
  }
  // Exact: distinct distributions have strictly positive divergence.
  auto a = exact(3, {{0, Rational(1, 3)}, {1, Rational(1, 3)}, {2, Rational(1, 3)}});
  auto b = exact(3, {{0, Rational(1, 2)}, {1, Rational(1, 4)}, {2, Rational(1, 4)}});
  EXPECT_FALSE(kl_divergence(a, b).is_zero());
  EXPECT_GT(kl_divergence(a, b).to_double(), 0.0);
}

TEST(ChainRuleTest, Examples) {
  auto p1 = exact(2, {{0, Rational(1, 3)}, {1, Rational(2, 3)}});
  auto p2 = exact(3, {{0, Rational(1, 2)}, {2, Rational(1, 2)}});
  auto q1 = ExactDist::uniform(2);
  auto q2 = ExactDist::uniform(3);
  auto pj = JointDist<Rational>::product(p1, p2);
  auto qj = JointDist<Rational>::product(q1, q2);

  auto same = kl_chain_rule_check(pj, pj);
  EXPECT_TRUE(same.lhs.is_zero());
  EXPECT_TRUE(same.rhs.is_zero());

  auto indep = kl_chain_rule_check(pj, qj);
  const LogLinear sum = kl_divergence(p1, q1) + kl_divergence(p2, q2);
  EXPECT_EQ(indep.lhs, sum);
  EXPECT_EQ(indep.rhs, sum);

  auto inf = kl_chain_rule_check(qj, pj);
  EXPECT_TRUE(inf.lhs.is_infinite());
  EXPECT_TRUE(inf.rhs.is_infinite());
}

TEST(ChainRuleTest, RandomFourByFourJoints) {
  Rng rng(99);
  for (int t = 0; t < 300; ++t) {
    JointDist<double> pj(4, 4, random_dist(rng, 16));
    // Full-support reference keeps the divergence finite.
    std::vector<FloatDist::Entry> e;
    double total = 0;
    std::vector<double> w(16);
    for (auto& v : w) total += (v = 0.05 + rng.unit());
    for (std::uint64_t i = 0; i < 16; ++i) e.emplace_back(i, w[i] / total);
    JointDist<double> qj(4, 4, FloatDist::from_entries(16, e));
    auto r = kl_chain_rule_check(pj, qj);
    EXPECT_NEAR(r.lhs, r.rhs, 1e-9);
  }
}

TEST(PinskerTest, Examples) {
  auto u = ExactDist::uniform(2);
  auto same = pinsker_check(u, u);
  EXPECT_EQ(same.tv, 0.0);
  EXPECT_EQ(same.bound, 0.0);

  auto r = pinsker_check(ExactDist::point(2, 0), u);
  EXPECT_DOUBLE_EQ(r.tv, 0.5);
  EXPECT_NEAR(r.bound, 0.5887050112577373, 1e-15);
  EXPECT_TRUE(r.holds());

  auto disjoint = pinsker_check(ExactDist::point(2, 0), ExactDist::point(2, 1));
  EXPECT_TRUE(std::isinf(disjoint.bound));
  EXPECT_TRUE(disjoint.holds());
}

TEST(PinskerTest, HoldsOnRandomPairs) {
  Rng rng(7);
  for (int t = 0; t < 1000; ++t) {
    const std::uint64_t size = 1 + rng.below(16);
    auto r = pinsker_check(random_dist(rng, size), random_dist(rng, size));
    EXPECT_TRUE(r.holds()) << r.tv << " > " << r.bound;
  }
}

TEST(JensenTest, ConcaveLogOnRandomSamples) {
  Rng rng(13);
  for (int t = 0; t < 500; ++t) {
    std::vector<double> v(1 + rng.below(20)), w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = 1e-3 + 100 * rng.unit();
      w[i] = rng.unit();
    }
    w[0] += 1e-3;
    EXPECT_TRUE(jensen_log2_check(v, w).holds());
    EXPECT_TRUE(jensen_log2_check(v).holds());
  }
  EXPECT_THROW(jensen_log2_check(std::vector<double>{1.0, 0.0}), InvariantViolation);
}

TEST(LogLinearTest, ExactArithmetic) {
  const LogLinear l3 = LogLinear::log2_of(Rational(3));
  const LogLinear l12 = LogLinear::log2_of(Rational(12));
  EXPECT_EQ(l12, LogLinear(Rational(2)) + l3);
  EXPECT_EQ(LogLinear::log2_of(Rational(1, 12)), LogLinear() - l12);
  EXPECT_NEAR(l12.to_double(), std::log2(12.0), 1e-15);
  EXPECT_TRUE((l3 - l3).is_zero());
  EXPECT_TRUE((LogLinear::infinity() * Rational(0)).is_zero());
  EXPECT_THROW(LogLinear::infinity() - LogLinear::infinity(), InvariantViolation);
  // A large composite forces the Pollard-rho path: 1000003 * 1000033.
  const mpz_class big = mpz_class(1000003) * mpz_class(1000033);
  auto f = factorize(big);
  ASSERT_EQ(f.size(), 2U);
  EXPECT_EQ(f[0].first, 1000003);
  EXPECT_EQ(f[1].first, 1000033);
}

TEST(SqrtComparisonTest, ExactForms) {
  EXPECT_TRUE(leq_sqrt(Rational(1, 2), Rational(1, 4)));
  EXPECT_FALSE(leq_sqrt(Rational(1, 2) + Rational(1, 1000), Rational(1, 4)));
  EXPECT_TRUE(leq_sqrt(Rational(-1), Rational(0)));
  EXPECT_TRUE(geq_sqrt(Rational(1, 2), Rational(1, 4)));
  EXPECT_FALSE(geq_sqrt(Rational(-1, 2), Rational(1, 4)));
}

}  // namespace
}  // namespace dcrhlab::probkit
