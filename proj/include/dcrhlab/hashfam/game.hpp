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
#include <string>
#include <utility>
#include <vector>

#include "dcrhlab/common/caps.hpp"
#include "dcrhlab/common/rng.hpp"
#include "dcrhlab/hashfam/family.hpp"
#include "dcrhlab/probkit/dist.hpp"

namespace dcrhlab::hashfam {

using probkit::Arithmetic;
using probkit::JointDist;
using probkit::Rational;

using Pair = std::pair<std::uint64_t, std::uint64_t>;

// Col(h): x1 uniform, then x2 uniform on h^{-1}(h(x1)).
template <class Num>
JointDist<Num> col_distribution(const HashFunction& h, const Caps& caps = {});

Pair col_sample(const HashFunction& h, Rng& rng);

// A deterministic algorithm over a uniform tape in [0, tape_space).
struct Adversary {
  std::string name;
  std::uint64_t tape_space = 1;
  std::function<Pair(const HashFunction&, std::uint64_t tape)> run;
};

// Col as an adversary: tape = (x1, r) with r in [0, L) and L a multiple of
// every preimage class size in the family.
Adversary col_adversary(const HashFamily& family);
Adversary fixed_pair_adversary(std::uint64_t x1, std::uint64_t x2);
// x1 = tape, x2 = x1.
Adversary diagonal_adversary(int n);

template <class Num>
JointDist<Num> adversary_distribution(const Adversary& a, const HashFunction& h, const Caps& caps = {});

JointDist<double> adversary_distribution_mc(const Adversary& a, const HashFunction& h,
                                            std::uint64_t samples, Rng& rng);

struct GameOptions {
  Arithmetic arithmetic = Arithmetic::exact;
  bool monte_carlo = false;
  std::uint64_t samples = 100000;  // per key
  std::uint64_t seed = 1;
  double p_inv = 0.1;  // threshold 1/p(n)
  double alpha = 0.01;
  Caps caps;
};

struct GameReport {
  std::string family;
  std::string adversary;
  int n = 0;
  double distance = 0;  // E_h Delta(A(h), Col(h))
  std::vector<double> per_h;
  // Exact mode only: the same average as a rational, and the distance of the
  // joint (h, pair) laws, which must coincide.
  bool exact = false;
  Rational exact_distance{0};
  Rational joint_distance{0};
  std::vector<Rational> exact_per_h;
  bool monte_carlo = false;
  std::uint64_t samples = 0;
  double ci_half_width = 0;  // 1 - alpha confidence
  double p_inv = 0;

  bool within_threshold() const { return distance <= p_inv; }
};

GameReport dcrh_distance(const HashFamily& family, const Adversary& a, const GameOptions& options = {});

}  // namespace dcrhlab::hashfam
