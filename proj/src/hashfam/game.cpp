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

#include "dcrhlab/hashfam/game.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "dcrhlab/common/error.hpp"
#include "dcrhlab/probkit/measures.hpp"

namespace dcrhlab::hashfam {
namespace {

using probkit::Dist;
using probkit::make_ratio;

template <class Num>
JointDist<Num> from_pair_counts(std::uint64_t side, const std::unordered_map<std::uint64_t, std::uint64_t>& counts) {
  std::vector<std::pair<probkit::Outcome, std::uint64_t>> flat(counts.begin(), counts.end());
  return JointDist<Num>(side, side, Dist<Num>::from_counts(side * side, flat));
}

void check_pair(const HashFunction& h, const Pair& p, const std::string& who) {
  if (p.first >= h.input_space() || p.second >= h.input_space()) {
    throw InvariantViolation("adversary '" + who + "' produced an input outside {0,1}^n");
  }
}

// The (h, x1, x2) law over all keys, each key weighted 1/|keys|.
template <class Num>
Dist<Num> joint_over_keys(const std::vector<JointDist<Num>>& per_key) {
  const std::uint64_t block = per_key.front().pairs().domain_size();
  std::vector<typename Dist<Num>::Entry> e;
  const Num w = make_ratio<Num>(1, per_key.size());
  for (std::size_t k = 0; k < per_key.size(); ++k) {
    for (const auto& [c, p] : per_key[k].pairs().support()) e.emplace_back(k * block + c, Num(p * w));
  }
  return Dist<Num>::from_entries(block * per_key.size(), std::move(e));
}

template <class Num>
void exact_game(const HashFamily& family, const Adversary& a, const GameOptions& options, GameReport& r) {
  std::vector<JointDist<Num>> adv, col;
  Num total(0);
  for (const auto& h : family.keys()) {
    adv.push_back(adversary_distribution<Num>(a, h, options.caps));
    col.push_back(col_distribution<Num>(h, options.caps));
    const Num d = probkit::stat_distance(adv.back().pairs(), col.back().pairs());
    total += d;
    r.per_h.push_back(probkit::to_double(d));
    if constexpr (probkit::is_exact_v<Num>) r.exact_per_h.push_back(d);
  }
  const Num mean = total / make_ratio<Num>(family.size(), 1);
  r.distance = probkit::to_double(mean);
  const Num joint = probkit::stat_distance(joint_over_keys(adv), joint_over_keys(col));
  if constexpr (probkit::is_exact_v<Num>) {
    r.exact = true;
    r.exact_distance = mean;
    r.joint_distance = joint;
    if (joint != mean) throw InvariantViolation("joint distance differs from the per-key average");
  } else {
    if (std::abs(joint - mean) > probkit::kFloatTolerance) {
      throw InvariantViolation("joint distance differs from the per-key average");
    }
  }
}

}  // namespace

template <class Num>
JointDist<Num> col_distribution(const HashFunction& h, const Caps& caps) {
  check_input_bits(h.n(), caps);
  const std::uint64_t side = h.input_space();
  std::vector<typename Dist<Num>::Entry> e;
  for (std::size_t c = 0; c < h.class_count(); ++c) {
    const auto members = h.class_members(c);
    const Num w = make_ratio<Num>(1, side * members.size());
    for (std::uint32_t x1 : members) {
      for (std::uint32_t x2 : members) e.emplace_back(x1 * side + x2, w);
    }
  }
  return JointDist<Num>(side, side, Dist<Num>::from_entries(side * side, std::move(e)));
}

Pair col_sample(const HashFunction& h, Rng& rng) {
  const std::uint64_t x1 = rng.below(h.input_space());
  const auto cls = h.collision_class(x1);
  return {x1, cls[rng.below(cls.size())]};
}

Adversary col_adversary(const HashFamily& family) {
  const std::uint64_t l = family.class_size_lcm();
  const std::uint64_t side = std::uint64_t{1} << family.n();
  if (l > (std::uint64_t{1} << 40) / side) throw CapExceeded("Col tape space does not fit");
  return Adversary{"col", side * l, [l](const HashFunction& h, std::uint64_t tape) {
                     const std::uint64_t x1 = tape / l;
                     const auto cls = h.collision_class(x1);
                     return Pair{x1, cls[(tape % l) % cls.size()]};
                   }};
}

Adversary fixed_pair_adversary(std::uint64_t x1, std::uint64_t x2) {
  return Adversary{"fixed", 1, [x1, x2](const HashFunction&, std::uint64_t) { return Pair{x1, x2}; }};
}

Adversary diagonal_adversary(int n) {
  return Adversary{"diagonal", std::uint64_t{1} << n,
                   [](const HashFunction&, std::uint64_t tape) { return Pair{tape, tape}; }};
}

template <class Num>
JointDist<Num> adversary_distribution(const Adversary& a, const HashFunction& h, const Caps& caps) {
  check_input_bits(h.n(), caps);
  check_tape_space(a.tape_space, caps);
  const std::uint64_t side = h.input_space();
  std::unordered_map<std::uint64_t, std::uint64_t> counts;
  for (std::uint64_t t = 0; t < a.tape_space; ++t) {
    const Pair p = a.run(h, t);
    check_pair(h, p, a.name);
    ++counts[p.first * side + p.second];
  }
  return from_pair_counts<Num>(side, counts);
}

JointDist<double> adversary_distribution_mc(const Adversary& a, const HashFunction& h,
                                            std::uint64_t samples, Rng& rng) {
  if (samples == 0) throw ConfigError("Monte-Carlo mode needs at least one sample");
  const std::uint64_t side = h.input_space();
  std::unordered_map<std::uint64_t, std::uint64_t> counts;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const Pair p = a.run(h, rng.below(a.tape_space));
    check_pair(h, p, a.name);
    ++counts[p.first * side + p.second];
  }
  return from_pair_counts<double>(side, counts);
}

GameReport dcrh_distance(const HashFamily& family, const Adversary& a, const GameOptions& options) {
  GameReport r;
  r.family = family.name();
  r.adversary = a.name;
  r.n = family.n();
  r.p_inv = options.p_inv;
  if (!options.monte_carlo) {
    if (options.arithmetic == Arithmetic::exact) {
      exact_game<Rational>(family, a, options, r);
    } else {
      exact_game<double>(family, a, options, r);
    }
    return r;
  }

  r.monte_carlo = true;
  r.samples = options.samples;
  const double keys = static_cast<double>(family.size());
  const double n_samples = static_cast<double>(options.samples);
  const double pairs = std::ldexp(1.0, 2 * family.n());
  const double support = std::min(pairs, static_cast<double>(a.tape_space));
  double total = 0;
  for (std::size_t k = 0; k < family.size(); ++k) {
    const auto& h = family.key(k);
    Rng rng(derive_seed(options.seed, {0x6d63, k}));
    const auto emp = adversary_distribution_mc(a, h, options.samples, rng);
    const double d = probkit::stat_distance(emp.pairs(), col_distribution<double>(h, options.caps).pairs());
    r.per_h.push_back(d);
    total += d;
  }
  r.distance = total / keys;
  // E Delta(empirical, true) <= sqrt(k/N)/2, plus a bounded-differences
  // deviation term with the failure probability split across keys.
  r.ci_half_width = 0.5 * std::sqrt(support / n_samples) +
                    std::sqrt(std::log(keys / options.alpha) / (2 * n_samples));
  return r;
}

template JointDist<Rational> col_distribution<Rational>(const HashFunction&, const Caps&);
template JointDist<double> col_distribution<double>(const HashFunction&, const Caps&);
template JointDist<Rational> adversary_distribution<Rational>(const Adversary&, const HashFunction&, const Caps&);
template JointDist<double> adversary_distribution<double>(const Adversary&, const HashFunction&, const Caps&);

}  // namespace dcrhlab::hashfam
