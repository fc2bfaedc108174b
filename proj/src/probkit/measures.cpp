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

#include "dcrhlab/probkit/measures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace dcrhlab::probkit {

namespace {

template <class Num>
void require_same_domain(const Dist<Num>& p, const Dist<Num>& q) {
  if (p.domain_size() != q.domain_size()) {
    throw DomainMismatch("distributions over domains of size " + std::to_string(p.domain_size()) +
                         " and " + std::to_string(q.domain_size()));
  }
}

// sum_i w_i * log2(1 / w_i), grouping equal masses so each distinct value is
// factored once.
LogLinear exact_entropy(std::vector<Rational> masses) {
  std::sort(masses.begin(), masses.end());
  LogLinear h;
  std::size_t i = 0;
  while (i < masses.size()) {
    std::size_t j = i;
    while (j < masses.size() && masses[j] == masses[i]) ++j;
    const Rational& v = masses[i];
    const Rational weight = v * static_cast<unsigned long>(j - i);
    h += LogLinear::log2_of(Rational(1 / v)) * weight;
    i = j;
  }
  return h;
}

template <class Num>
Bits<Num> entropy_of_row(const std::vector<typename Dist<Num>::Entry>& sup, std::size_t lo,
                         std::size_t hi, const Num& total) {
  if constexpr (is_exact_v<Num>) {
    std::vector<Rational> masses;
    masses.reserve(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) masses.emplace_back(sup[i].second / total);
    return exact_entropy(std::move(masses));
  } else {
    double h = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double w = sup[i].second / total;
      if (w > 0) h -= w * std::log2(w);
    }
    return h;
  }
}

}  // namespace

template <class Num>
Num stat_distance(const Dist<Num>& p, const Dist<Num>& q) {
  require_same_domain(p, q);
  const auto& a = p.support();
  const auto& b = q.support();
  Num acc(0);
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      acc += a[i++].second;
    } else if (i == a.size() || b[j].first < a[i].first) {
      acc += b[j++].second;
    } else {
      if (a[i].second >= b[j].second) {
        acc += a[i].second - b[j].second;
      } else {
        acc += b[j].second - a[i].second;
      }
      ++i;
      ++j;
    }
  }
  return Num(acc / 2);
}

template <class Num>
Bits<Num> shannon_entropy(const Dist<Num>& p) {
  return entropy_of_row<Num>(p.support(), 0, p.support_size(), Num(1));
}

template <class Num>
Bits<Num> sample_entropy(const Dist<Num>& p, Outcome x) {
  if (x >= p.domain_size()) throw DomainMismatch("outcome outside the distribution's domain");
  const Num w = p.mass(x);
  if (w == 0) throw OutOfSupport("sample-entropy undefined outside the support");
  return log2_of<Num>(Num(1 / w));
}

template <class Num>
Bits<Num> cond_entropy(const JointDist<Num>& j) {
  Bits<Num> h = shannon_entropy(j.pairs());
  h -= shannon_entropy(j.second());
  return h;
}

template <class Num>
Bits<Num> cond_entropy_by_expectation(const JointDist<Num>& j) {
  const JointDist<Num> by_second = j.swapped();
  const auto& sup = by_second.pairs().support();
  Bits<Num> h{};
  std::size_t i = 0;
  while (i < sup.size()) {
    const Outcome b = sup[i].first / by_second.second_size();
    std::size_t k = i;
    Num weight(0);
    while (k < sup.size() && sup[k].first / by_second.second_size() == b) weight += sup[k++].second;
    Bits<Num> row = entropy_of_row<Num>(sup, i, k, weight);
    h += row * weight;
    i = k;
  }
  return h;
}

template <class Num>
Bits<Num> kl_divergence(const Dist<Num>& p, const Dist<Num>& q) {
  require_same_domain(p, q);
  if constexpr (is_exact_v<Num>) {
    std::map<Rational, Rational> by_ratio;  // p/q -> total p mass
    for (const auto& [x, w] : p.support()) {
      const Rational qx = q.mass(x);
      if (qx == 0) return LogLinear::infinity();
      by_ratio[Rational(w / qx)] += w;
    }
    LogLinear d;
    for (const auto& [r, w] : by_ratio) d += LogLinear::log2_of(r) * w;
    return d;
  } else {
    double d = 0;
    for (const auto& [x, w] : p.support()) {
      const double qx = q.mass(x);
      if (qx == 0) return std::numeric_limits<double>::infinity();
      d += w * std::log2(w / qx);
    }
    // Rounding can push an exact zero slightly negative.
    return d < 0 && d > -kFloatTolerance ? 0.0 : d;
  }
}

template <class Num>
ChainRule<Num> kl_chain_rule_check(const JointDist<Num>& pj, const JointDist<Num>& qj) {
  if (pj.first_size() != qj.first_size() || pj.second_size() != qj.second_size()) {
    throw DomainMismatch("joint distributions over different product domains");
  }
  ChainRule<Num> out{kl_divergence(pj.pairs(), qj.pairs()), {}};
  const Dist<Num> p1 = pj.first();
  const Dist<Num> q1 = qj.first();
  Bits<Num> rhs = kl_divergence(p1, q1);
  if (is_infinite(rhs)) {
    out.rhs = rhs;
    return out;
  }
  for (const auto& [x, w] : p1.support()) {
    Bits<Num> term = kl_divergence(pj.second_given_first(x), qj.second_given_first(x));
    if (is_infinite(term)) {
      out.rhs = bits_infinity<Num>();
      return out;
    }
    rhs += term * w;
  }
  out.rhs = rhs;
  return out;
}

template <class Num>
PinskerResult pinsker_check(const Dist<Num>& p, const Dist<Num>& q) {
  PinskerResult r;
  r.tv = to_double(stat_distance(p, q));
  const double d = to_double(kl_divergence(p, q));
  r.bound = std::isinf(d) ? d : std::sqrt(std::numbers::ln2 / 2.0 * std::max(d, 0.0));
  return r;
}

JensenResult jensen_log2_check(std::span<const double> values, std::span<const double> weights) {
  if (values.empty()) throw InvariantViolation("Jensen check on an empty sample");
  if (!weights.empty() && weights.size() != values.size()) {
    throw DomainMismatch("weights and values differ in length");
  }
  double total = 0, mean = 0, mean_log = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0)) throw InvariantViolation("Jensen check for log2 needs positive samples");
    const double w = weights.empty() ? 1.0 : weights[i];
    if (w < 0) throw InvariantViolation("negative weight");
    total += w;
    mean += w * values[i];
    mean_log += w * std::log2(values[i]);
  }
  return {mean_log / total, std::log2(mean / total)};
}

template <class Num>
EntropyReport summarize(const Dist<Num>& p, const Dist<Num>& q, const JointDist<Num>& joint) {
  EntropyReport r;
  r.shannon = to_double(shannon_entropy(p));
  r.conditional = to_double(cond_entropy(joint));
  r.kl = to_double(kl_divergence(p, q));
  r.tv = to_double(stat_distance(p, q));
  return r;
}

#define DCRHLAB_INSTANTIATE(Num)                                                              \
  template Num stat_distance(const Dist<Num>&, const Dist<Num>&);                             \
  template Bits<Num> shannon_entropy(const Dist<Num>&);                                       \
  template Bits<Num> sample_entropy(const Dist<Num>&, Outcome);                               \
  template Bits<Num> cond_entropy(const JointDist<Num>&);                                     \
  template Bits<Num> cond_entropy_by_expectation(const JointDist<Num>&);                      \
  template Bits<Num> kl_divergence(const Dist<Num>&, const Dist<Num>&);                       \
  template ChainRule<Num> kl_chain_rule_check(const JointDist<Num>&, const JointDist<Num>&);  \
  template PinskerResult pinsker_check(const Dist<Num>&, const Dist<Num>&);                   \
  template EntropyReport summarize(const Dist<Num>&, const Dist<Num>&, const JointDist<Num>&);

DCRHLAB_INSTANTIATE(double)
DCRHLAB_INSTANTIATE(Rational)

#undef DCRHLAB_INSTANTIATE

}  // namespace dcrhlab::probkit
