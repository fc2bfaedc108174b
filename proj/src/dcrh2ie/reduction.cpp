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

#include "dcrhlab/dcrh2ie/reduction.hpp"

#include <cmath>
#include <map>
#include <set>

#include "dcrhlab/common/bits.hpp"
#include "dcrhlab/common/error.hpp"
#include "dcrhlab/probkit/logsum.hpp"

namespace dcrhlab::dcrh2ie {
namespace {

using probkit::Bits;
using probkit::Dist;
using probkit::LogLinear;
using probkit::LogSum;
using probkit::make_ratio;
using probkit::Rational;

std::size_t key_index(const HashFamily& family, const hashfam::HashFunction& h) {
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (&family.key(i) == &h) return i;
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family.key(i) == h) return i;
  }
  throw OutOfSupport("hash function is not a key of the family");
}

void require_consistent(const OnlineGenerator& gt, const std::shared_ptr<const HashFamily>& family) {
  const auto c = iegen::check_consistent(gt, build_two_block_generator(family));
  if (!c.consistent) {
    std::string msg = gt.name() + " is not consistent with G: " + c.reason;
    if (c.counterexample) msg += " at " + iegen::to_string(*c.counterexample);
    throw InvariantViolation(msg);
  }
}

template <class Num>
Bits<Num> scale(Bits<Num> v, const Num& w) {
  return v * w;
}

template <class Num>
struct Analysis {
  Bits<Num> accessible{};
  Bits<Num> kl1{};
  Bits<Num> entropy_x1{};
  Bits<Num> kl2{};
  Bits<Num> mean_log_preimage{};
  Bits<Num> cond_x2{};
  Bits<Num> block1_entropy{};
  Bits<Num> jensen{};
  Num distance{0};
  bool collisions_valid = true;
  bool depends_only_on_y = true;
};

template <class Num>
Analysis<Num> analyze(const OnlineGenerator& gt, const std::shared_ptr<const HashFamily>& family,
                      bool with_accessible) {
  require_consistent(gt, family);
  const int n = family->n();
  const std::uint64_t side = pow2(n);
  const Num w = make_ratio<Num>(1, family->size());
  Analysis<Num> a;
  LogSum block1;
  LogSum jensen;
  for (std::size_t z = 0; z < family->size(); ++z) {
    const auto& h = family->key(z);
    const auto adv = rewinding_distribution<Num>(gt, *family, z);
    for (const auto& [code, p] : adv.pairs().support()) {
      const auto [x1, x2] = adv.split(code);
      if (h(x1) != h(x2)) a.collisions_valid = false;
    }
    const auto x1 = adv.first();
    a.kl1 += scale<Num>(probkit::kl_divergence(x1, Dist<Num>::uniform(side)), w);
    a.entropy_x1 += scale<Num>(probkit::shannon_entropy(x1), w);
    a.cond_x2 += scale<Num>(probkit::cond_entropy(adv.swapped()), w);
    a.distance += probkit::stat_distance(adv.pairs(), hashfam::col_distribution<Num>(h).pairs()) * w;

    std::map<std::size_t, Dist<Num>> by_class;
    for (const auto& [u, p] : x1.support()) {
      const auto cls = h.collision_class(u);
      const auto cond = adv.second_given_first(u);
      const auto uniform = Dist<Num>::uniform_over(side, {cls.begin(), cls.end()});
      a.kl2 += scale<Num>(probkit::kl_divergence(cond, uniform), Num(p * w));
      a.mean_log_preimage += scale<Num>(probkit::log2_of<Num>(Num(cls.size())), Num(p * w));
      auto [it, fresh] = by_class.try_emplace(h.class_of(u), cond);
      if (!fresh && !(it->second == cond)) a.depends_only_on_y = false;
    }

    // First-block law and the mass of preimages over its support.
    const std::uint64_t v0 = gt.coin_space(0, z, {});
    std::map<std::uint64_t, std::uint64_t> y_counts;
    for (std::uint64_t r = 0; r < v0; ++r) {
      const std::vector<std::uint64_t> coins{r};
      ++y_counts[gt.block(0, z, coins).value];
    }
    block1.add(1, family->size(), v0);
    block1.add_counts_xlogx(-1, family->size() * v0, y_counts);
    std::uint64_t mass = 0;
    for (const auto& [y, c] : y_counts) mass += h.preimage(y).size();
    jensen.add(1, family->size(), mass);
  }
  a.block1_entropy = block1.total<Num>();
  a.jensen = jensen.total<Num>();
  if (with_accessible) a.accessible = iegen::accessible_entropy<Num>(gt).by_blocks;
  return a;
}

constexpr double kFloatNoise = 1e-12;

template <class Num>
bool same(const Bits<Num>& x, const Bits<Num>& y) {
  if constexpr (probkit::is_exact_v<Num>) {
    return x == y;
  } else {
    return std::abs(x - y) <= probkit::kFloatTolerance;
  }
}

template <class Num>
GapReport build_report(const OnlineGenerator& gt, const std::shared_ptr<const HashFamily>& family,
                       double tol) {
  const auto a = analyze<Num>(gt, family, true);
  const int n = family->n();
  const Bits<Num> n_bits = probkit::log2_of<Num>(Num(pow2(n)));
  const Bits<Num> gap = n_bits - a.accessible;
  const Bits<Num> kl1_by_entropy = n_bits - a.entropy_x1;
  const Bits<Num> block2 = a.accessible - a.block1_entropy;

  GapReport r;
  r.family = family->name();
  r.generator = gt.name();
  r.n = n;
  r.exact = probkit::is_exact_v<Num>;
  r.accessible = probkit::to_double(a.accessible);
  r.gap = probkit::to_double(gap);
  r.kl1 = probkit::to_double(a.kl1);
  r.kl2 = probkit::to_double(a.kl2);
  r.measured_distance = probkit::to_double(a.distance);
  r.first_block = {r.kl1, probkit::to_double(kl1_by_entropy)};
  r.second_block.value = r.kl2;
  r.second_block.terms = {probkit::to_double(a.mean_log_preimage), probkit::to_double(a.cond_x2),
                    probkit::to_double(a.block1_entropy), probkit::to_double(block2),
                    probkit::to_double(a.jensen), a.depends_only_on_y};
  // Float round-off below the noise floor would be amplified by the roots.
  const double floor = probkit::is_exact_v<Num> ? 0.0 : kFloatNoise;
  auto root = [floor](double v) { return v <= floor ? 0.0 : std::sqrt(v); };
  const double clamped_gap = r.gap <= floor ? 0.0 : r.gap;
  r.bound = root(r.kl1) + root(r.kl2);
  r.q_inv = clamped_gap;
  r.p_inv = 2 * std::sqrt(clamped_gap);
  r.collisions_valid = a.collisions_valid;
  if constexpr (probkit::is_exact_v<Num>) {
    r.gap_exactly_zero = gap.is_zero();
    r.distance_exactly_zero = a.distance == 0;
  } else {
    r.gap_exactly_zero = r.gap == 0;
    r.distance_exactly_zero = r.measured_distance == 0;
  }

  auto check = [&](bool ok, const std::string& what) {
    if (!ok) r.violations.push_back(what);
  };
  check(a.collisions_valid, "rewinding adversary output a non-colliding pair");
  check(same<Num>(a.kl1, kl1_by_entropy), "first-block kl routes disagree");
  check(same<Num>(a.kl2, a.mean_log_preimage - a.cond_x2), "second-block kl routes disagree");
  check(r.measured_distance <= r.bound + tol, "distance exceeds sqrt(kl1) + sqrt(kl2)");
  check(r.kl1 <= r.gap + tol, "kl1 exceeds the gap");
  check(r.kl2 <= r.gap + tol, "kl2 exceeds the gap");
  check(r.bound <= 2 * std::sqrt(clamped_gap) + tol, "bound exceeds 2 sqrt(gap)");
  check(r.second_block.terms.cond_entropy_x2 >= r.second_block.terms.block2_entropy - tol,
        "H(X2|X1) below H(Y2|Z,R1)");
  check(r.second_block.terms.mean_log_preimage + r.second_block.terms.block1_entropy <= r.second_block.terms.jensen_log_mass + tol,
        "Jensen step fails");
  check(r.second_block.terms.jensen_log_mass <= n + tol, "preimage mass exceeds 2^n");
  return r;
}

}  // namespace

hashfam::Adversary rewinding_adversary(const OnlineGenerator& gt, std::shared_ptr<const HashFamily> family,
                                       bool unchecked) {
  if (!unchecked) require_consistent(gt, family);
  const std::uint64_t v0 = gt.coin_space(0, 0, {});
  std::uint64_t l = 1;
  for (std::size_t z = 0; z < family->size(); ++z) {
    if (gt.coin_space(0, z, {}) != v0) throw InvariantViolation("first-block alphabet depends on the key");
    for (std::uint64_t r = 0; r < v0; ++r) {
      const std::vector<std::uint64_t> prior{r};
      l = lcm_checked(l, gt.coin_space(1, z, prior));
    }
  }
  if (l > (std::uint64_t{1} << 20) || v0 > (std::uint64_t{1} << 60) / (l * l)) {
    throw CapExceeded("rewinding adversary tape does not fit");
  }
  auto shared = std::make_shared<const OnlineGenerator>(gt);
  return hashfam::Adversary{
      "rewind-" + gt.name(), v0 * l * l, [shared, family, l](const hashfam::HashFunction& h, std::uint64_t tape) {
        const std::uint64_t z = key_index(*family, h);
        const std::uint64_t r1 = tape / (l * l);
        const std::vector<std::uint64_t> prior{r1};
        const std::uint64_t v = shared->coin_space(1, z, prior);
        const std::vector<std::uint64_t> first{r1, (tape / l % l) % v};
        const std::vector<std::uint64_t> second{r1, (tape % l) % v};
        return hashfam::Pair{shared->block(1, z, first).value, shared->block(1, z, second).value};
      }};
}

template <class Num>
JointDist<Num> rewinding_distribution(const OnlineGenerator& gt, const HashFamily& family, std::size_t key) {
  const std::uint64_t side = pow2(family.n());
  const std::uint64_t v0 = gt.coin_space(0, key, {});
  // Group first coins by the law of the second block they induce.
  std::map<std::pair<std::uint64_t, std::vector<std::pair<std::uint64_t, std::uint64_t>>>, std::uint64_t> groups;
  for (std::uint64_t r = 0; r < v0; ++r) {
    std::vector<std::uint64_t> coins{r};
    const std::uint64_t v = gt.coin_space(1, key, coins);
    std::map<std::uint64_t, std::uint64_t> counts;
    coins.push_back(0);
    for (std::uint64_t r2 = 0; r2 < v; ++r2) {
      coins[1] = r2;
      const std::uint64_t x = gt.block(1, key, coins).value;
      if (x >= side) throw InvariantViolation(gt.name() + ": second block outside {0,1}^n");
      ++counts[x];
    }
    ++groups[{v, {counts.begin(), counts.end()}}];
  }
  std::map<std::uint64_t, Num> mass;
  for (const auto& [law, mult] : groups) {
    const auto& [v, counts] = law;
    const Num w = make_ratio<Num>(mult, v0) / make_ratio<Num>(v * v, 1);
    for (const auto& [a, ca] : counts) {
      for (const auto& [b, cb] : counts) mass[a * side + b] += w * make_ratio<Num>(ca * cb, 1);
    }
  }
  std::vector<typename Dist<Num>::Entry> e(mass.begin(), mass.end());
  return JointDist<Num>(side, side, Dist<Num>::from_entries(side * side, std::move(e)));
}

FirstBlockKl first_block_check(const OnlineGenerator& gt, std::shared_ptr<const HashFamily> family, Arithmetic arithmetic) {
  const auto run = [&]<class Num>() {
    const auto a = analyze<Num>(gt, family, false);
    const Bits<Num> by_entropy = probkit::log2_of<Num>(Num(pow2(family->n()))) - a.entropy_x1;
    if (!same<Num>(a.kl1, by_entropy)) throw InvariantViolation("first-block kl routes disagree");
    return FirstBlockKl{probkit::to_double(a.kl1), probkit::to_double(by_entropy)};
  };
  return arithmetic == Arithmetic::exact ? run.template operator()<Rational>() : run.template operator()<double>();
}

SecondBlockKl second_block_check(const OnlineGenerator& gt, std::shared_ptr<const HashFamily> family, Arithmetic arithmetic) {
  const auto r = arithmetic == Arithmetic::exact ? build_report<Rational>(gt, family, 1e-9)
                                                 : build_report<double>(gt, family, 1e-9);
  return r.second_block;
}

GapReport gap_bound_check(const OnlineGenerator& gt, std::shared_ptr<const HashFamily> family,
                          Arithmetic arithmetic, double tolerance) {
  return arithmetic == Arithmetic::exact ? build_report<Rational>(gt, family, tolerance)
                                         : build_report<double>(gt, family, tolerance);
}

template JointDist<Rational> rewinding_distribution<Rational>(const OnlineGenerator&, const HashFamily&, std::size_t);
template JointDist<double> rewinding_distribution<double>(const OnlineGenerator&, const HashFamily&, std::size_t);

}  // namespace dcrhlab::dcrh2ie
