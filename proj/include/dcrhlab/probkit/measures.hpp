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

#include <span>
#include <type_traits>

#include "dcrhlab/probkit/dist.hpp"
#include "dcrhlab/probkit/rational.hpp"

namespace dcrhlab::probkit {

// Information quantities in bits: exact log-linear values for rational
// distributions, doubles otherwise. +infinity marks support violations in KL.
template <class Num>
using Bits = std::conditional_t<is_exact_v<Num>, LogLinear, double>;

template <class Num>
Bits<Num> bits_infinity() {
  if constexpr (is_exact_v<Num>) {
    return LogLinear::infinity();
  } else {
    return std::numeric_limits<double>::infinity();
  }
}

inline bool is_infinite(const LogLinear& v) { return v.is_infinite(); }
inline bool is_infinite(double v) { return std::isinf(v); }

// log2 of a positive mass.
template <class Num>
Bits<Num> log2_of(const Num& v) {
  if constexpr (is_exact_v<Num>) {
    return LogLinear::log2_of(v);
  } else {
    return std::log2(v);
  }
}

template <class Num>
Num stat_distance(const Dist<Num>& p, const Dist<Num>& q);

template <class Num>
Bits<Num> shannon_entropy(const Dist<Num>& p);

// log2(1 / p(x)); throws OutOfSupport when p(x) == 0.
template <class Num>
Bits<Num> sample_entropy(const Dist<Num>& p, Outcome x);

// H(first | second) computed as H(first, second) - H(second).
template <class Num>
Bits<Num> cond_entropy(const JointDist<Num>& j);

// H(first | second) computed as E_{b <- second} H(first | second = b).
template <class Num>
Bits<Num> cond_entropy_by_expectation(const JointDist<Num>& j);

template <class Num>
Bits<Num> kl_divergence(const Dist<Num>& p, const Dist<Num>& q);

template <class Num>
struct ChainRule {
  Bits<Num> lhs;  // D(pj || qj)
  Bits<Num> rhs;  // D(p1 || q1) + E_{x <- p1} D(p2|x || q2|x)
};

// Conditions on the first coordinate.
template <class Num>
ChainRule<Num> kl_chain_rule_check(const JointDist<Num>& pj, const JointDist<Num>& qj);

struct PinskerResult {
  double tv = 0;
  double bound = 0;  // sqrt((ln 2 / 2) * D(p || q)) with D in bits
  bool holds(double tol = 1e-12) const { return tv <= bound + tol; }
};

template <class Num>
PinskerResult pinsker_check(const Dist<Num>& p, const Dist<Num>& q);

struct JensenResult {
  double mean_of_log = 0;  // E[log2 X]
  double log_of_mean = 0;  // log2 E[X]
  bool holds(double tol = 1e-12) const { return mean_of_log <= log_of_mean + tol; }
};

// Jensen for the concave log2 on positive samples; uniform weights when empty.
JensenResult jensen_log2_check(std::span<const double> values, std::span<const double> weights = {});

struct EntropyReport {
  double shannon = 0;      // H(p)
  double conditional = 0;  // H(first | second) of the joint
  double kl = 0;           // D(p || q)
  double tv = 0;           // Delta(p, q)
};

template <class Num>
EntropyReport summarize(const Dist<Num>& p, const Dist<Num>& q, const JointDist<Num>& joint);

}  // namespace dcrhlab::probkit
