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
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dcrhlab/hashfam/game.hpp"
#include "dcrhlab/iegen/entropy.hpp"

namespace dcrhlab::dcrh2ie {

using hashfam::HashFamily;
using iegen::BlockGenerator;
using iegen::OnlineGenerator;
using probkit::Arithmetic;
using probkit::JointDist;

// G(h, x) = (h(x), x) with h the z-th key of the family.
BlockGenerator build_two_block_generator(std::shared_ptr<const HashFamily> family);

enum class GeneratorKind { honest, ideal, lazy, skewed, half, cheating_length, liar };

std::string_view generator_name(GeneratorKind kind);
GeneratorKind parse_generator(std::string_view name);
// Every shipped generator that is consistent with the two-block G.
const std::vector<GeneratorKind>& consistent_generators();

OnlineGenerator make_generator(GeneratorKind kind, std::shared_ptr<const HashFamily> family);

// Runs gt, then reruns its second block with fresh coins: tape = (r1, r2, r2').
// Throws InvariantViolation when gt is not consistent, unless `unchecked`.
hashfam::Adversary rewinding_adversary(const OnlineGenerator& gt, std::shared_ptr<const HashFamily> family,
                                       bool unchecked = false);

// Law of the rewinding adversary's output on the key-th function, computed
// from the per-first-coin laws of the second block.
template <class Num>
JointDist<Num> rewinding_distribution(const OnlineGenerator& gt, const HashFamily& family, std::size_t key);

struct FirstBlockKl {
  double value = 0;         // E_h D(X1^A || U_n)
  double by_entropy = 0;    // n - E_h H(X1^A)
};

struct SecondBlockTerms {
  double mean_log_preimage = 0;  // E log |h^-1(h(x1))|
  double cond_entropy_x2 = 0;    // H(X2^A | X1^A)
  double block1_entropy = 0;     // H(Y1 | Z)
  double block2_entropy = 0;     // H(Y2 | Z, R1)
  double jensen_log_mass = 0;    // E_h log sum_{y in supp Y1} |h^-1(y)|, at most n
  bool depends_only_on_y = true; // X2^A | x1 is a function of h(x1) alone
};

struct SecondBlockKl {
  double value = 0;  // E_{h, x1} D(X2^A|x1 || U(h^-1(h(x1))))
  SecondBlockTerms terms;
};

struct GapReport {
  std::string family;
  std::string generator;
  int n = 0;
  bool exact = false;
  double accessible = 0;
  double gap = 0;  // n - accessible
  double kl1 = 0;
  double kl2 = 0;
  double measured_distance = 0;
  double bound = 0;  // sqrt(kl1) + sqrt(kl2)
  double q_inv = 0;  // the slack 1/q realized by this generator, i.e. the gap
  double p_inv = 0;  // 2 sqrt(q_inv)
  FirstBlockKl first_block;
  SecondBlockKl second_block;
  bool collisions_valid = true;
  bool gap_exactly_zero = false;
  bool distance_exactly_zero = false;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// 1/q for a target 1/p under q = 4 p^2.
inline double q_inv_for(double p_inv) { return p_inv * p_inv / 4; }

FirstBlockKl first_block_check(const OnlineGenerator& gt, std::shared_ptr<const HashFamily> family,
                    Arithmetic arithmetic = Arithmetic::exact);
SecondBlockKl second_block_check(const OnlineGenerator& gt, std::shared_ptr<const HashFamily> family,
                    Arithmetic arithmetic = Arithmetic::exact);

// Fills every field and records each violated invariant.
GapReport gap_bound_check(const OnlineGenerator& gt, std::shared_ptr<const HashFamily> family,
                          Arithmetic arithmetic = Arithmetic::exact, double tolerance = 1e-9);

}  // namespace dcrhlab::dcrh2ie
