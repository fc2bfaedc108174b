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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "dcrhlab/common/error.hpp"
#include "dcrhlab/probkit/rational.hpp"

namespace dcrhlab::probkit {

// Outcomes are codes in [0, domain_size); callers choose the encoding
// (bit strings, pair codes, indices into a label table).
using Outcome = std::uint64_t;

inline constexpr double kFloatTolerance = 1e-9;

enum class Arithmetic { exact, floating };

// Exact rationals up to 2^12 outcomes, floats beyond.
inline Arithmetic choose_arithmetic(std::uint64_t domain_size) {
  return domain_size <= (std::uint64_t{1} << 12) ? Arithmetic::exact : Arithmetic::floating;
}

template <class Num>
inline constexpr bool is_exact_v = std::is_same_v<Num, Rational>;

template <class Num>
Num make_ratio(std::uint64_t num, std::uint64_t den) {
  if constexpr (is_exact_v<Num>) {
    return ratio(num, den);
  } else {
    return static_cast<double>(num) / static_cast<double>(den);
  }
}

// A probability distribution on a finite domain, stored as its support sorted
// by outcome. Immutable after construction.
template <class Num>
class Dist {
 public:
  using Entry = std::pair<Outcome, Num>;

  Dist() = default;

  static Dist point(std::uint64_t domain, Outcome x) {
    check_outcome(domain, x);
    Dist d;
    d.domain_ = domain;
    d.support_.emplace_back(x, Num(1));
    return d;
  }

  static Dist uniform(std::uint64_t domain) {
    if (domain == 0) throw InvariantViolation("uniform distribution on an empty domain");
    Dist d;
    d.domain_ = domain;
    const Num w = make_ratio<Num>(1, domain);
    d.support_.reserve(domain);
    for (Outcome x = 0; x < domain; ++x) d.support_.emplace_back(x, w);
    return d;
  }

  static Dist uniform_over(std::uint64_t domain, std::vector<Outcome> support) {
    if (support.empty()) throw InvariantViolation("uniform distribution on an empty set");
    std::sort(support.begin(), support.end());
    if (std::adjacent_find(support.begin(), support.end()) != support.end()) {
      throw InvariantViolation("duplicate outcome in uniform support");
    }
    Dist d;
    d.domain_ = domain;
    const Num w = make_ratio<Num>(1, support.size());
    for (Outcome x : support) {
      check_outcome(domain, x);
      d.support_.emplace_back(x, w);
    }
    return d;
  }

  // Validates non-negativity, unique outcomes and normalization; drops zeros.
  static Dist from_entries(std::uint64_t domain, std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    Dist d;
    d.domain_ = domain;
    Num total(0);
    for (std::size_t i = 0; i < entries.size(); ++i) {
      auto& [x, w] = entries[i];
      check_outcome(domain, x);
      if (i > 0 && entries[i - 1].first == x) throw InvariantViolation("duplicate outcome label");
      if (w < 0) throw InvariantViolation("negative probability mass");
      if (w == 0) continue;
      total += w;
      d.support_.emplace_back(x, std::move(w));
    }
    check_normalized(total);
    return d;
  }

  // Masses count / sum(counts).
  static Dist from_counts(std::uint64_t domain,
                          const std::vector<std::pair<Outcome, std::uint64_t>>& counts) {
    std::uint64_t total = 0;
    for (const auto& [x, c] : counts) total += c;
    if (total == 0) throw InvariantViolation("all counts are zero");
    std::vector<Entry> entries;
    entries.reserve(counts.size());
    for (const auto& [x, c] : counts) {
      if (c) entries.emplace_back(x, make_ratio<Num>(c, total));
    }
    return from_entries(domain, std::move(entries));
  }

  std::uint64_t domain_size() const { return domain_; }
  const std::vector<Entry>& support() const { return support_; }
  std::size_t support_size() const { return support_.size(); }

  Num mass(Outcome x) const {
    auto it = find(x);
    return it == support_.end() ? Num(0) : it->second;
  }
  bool in_support(Outcome x) const { return find(x) != support_.end(); }

  friend bool operator==(const Dist& a, const Dist& b) {
    return a.domain_ == b.domain_ && a.support_ == b.support_;
  }

 private:
  static void check_outcome(std::uint64_t domain, Outcome x) {
    if (x >= domain) {
      throw DomainMismatch("outcome " + std::to_string(x) + " outside domain of size " +
                           std::to_string(domain));
    }
  }

  static void check_normalized(const Num& total) {
    if constexpr (is_exact_v<Num>) {
      if (total != 1) throw InvariantViolation("masses sum to " + total.get_str() + ", not 1");
    } else {
      if (std::abs(total - 1.0) > kFloatTolerance) {
        throw InvariantViolation("masses sum to " + std::to_string(total) + ", not 1");
      }
    }
  }

  typename std::vector<Entry>::const_iterator find(Outcome x) const {
    auto it = std::lower_bound(support_.begin(), support_.end(), x,
                               [](const Entry& e, Outcome v) { return e.first < v; });
    return (it != support_.end() && it->first == x) ? it : support_.end();
  }

  std::uint64_t domain_ = 0;
  std::vector<Entry> support_;
};

// A distribution over a product domain; pair (a, b) is stored as a * second_size + b.
template <class Num>
class JointDist {
 public:
  JointDist() = default;

  JointDist(std::uint64_t first_size, std::uint64_t second_size, Dist<Num> pairs)
      : first_size_(first_size), second_size_(second_size), pairs_(std::move(pairs)) {
    check_sizes(first_size, second_size);
    if (pairs_.domain_size() != first_size * second_size) {
      throw DomainMismatch("joint distribution over a domain that is not the product");
    }
  }

  static JointDist from_pair_entries(std::uint64_t first_size, std::uint64_t second_size,
                                     const std::vector<std::pair<std::pair<Outcome, Outcome>, Num>>& e) {
    check_sizes(first_size, second_size);
    std::vector<typename Dist<Num>::Entry> flat;
    flat.reserve(e.size());
    for (const auto& [ab, w] : e) {
      if (ab.first >= first_size || ab.second >= second_size) {
        throw DomainMismatch("pair outcome outside product domain");
      }
      flat.emplace_back(ab.first * second_size + ab.second, w);
    }
    return JointDist(first_size, second_size,
                     Dist<Num>::from_entries(first_size * second_size, std::move(flat)));
  }

  static JointDist product(const Dist<Num>& a, const Dist<Num>& b) {
    check_sizes(a.domain_size(), b.domain_size());
    std::vector<typename Dist<Num>::Entry> flat;
    flat.reserve(a.support_size() * b.support_size());
    for (const auto& [x, wx] : a.support()) {
      for (const auto& [y, wy] : b.support()) {
        flat.emplace_back(x * b.domain_size() + y, Num(wx * wy));
      }
    }
    return JointDist(a.domain_size(), b.domain_size(),
                     Dist<Num>::from_entries(a.domain_size() * b.domain_size(), std::move(flat)));
  }

  std::uint64_t first_size() const { return first_size_; }
  std::uint64_t second_size() const { return second_size_; }
  const Dist<Num>& pairs() const { return pairs_; }

  Outcome code(Outcome a, Outcome b) const { return a * second_size_ + b; }
  std::pair<Outcome, Outcome> split(Outcome code) const {
    return {code / second_size_, code % second_size_};
  }
  Num mass(Outcome a, Outcome b) const { return pairs_.mass(code(a, b)); }

  friend bool operator==(const JointDist& a, const JointDist& b) {
    return a.first_size_ == b.first_size_ && a.second_size_ == b.second_size_ && a.pairs_ == b.pairs_;
  }

  Dist<Num> first() const { return marginal(true); }
  Dist<Num> second() const { return marginal(false); }

  // Entries whose first coordinate is a; contiguous because codes sort by a first.
  std::pair<std::size_t, std::size_t> row_range(Outcome a) const {
    const auto& sup = pairs_.support();
    auto cmp = [](const typename Dist<Num>::Entry& e, Outcome v) { return e.first < v; };
    auto lo = std::lower_bound(sup.begin(), sup.end(), a * second_size_, cmp);
    auto hi = std::lower_bound(lo, sup.end(), (a + 1) * second_size_, cmp);
    return {static_cast<std::size_t>(lo - sup.begin()), static_cast<std::size_t>(hi - sup.begin())};
  }

  // Law of the second coordinate given first == a (a must be in the support).
  Dist<Num> second_given_first(Outcome a) const {
    const auto [lo, hi] = row_range(a);
    const auto& sup = pairs_.support();
    Num total(0);
    for (std::size_t i = lo; i < hi; ++i) total += sup[i].second;
    if (total == 0) throw OutOfSupport("conditioning on an outcome of probability zero");
    std::vector<typename Dist<Num>::Entry> entries;
    entries.reserve(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) {
      entries.emplace_back(sup[i].first % second_size_, Num(sup[i].second / total));
    }
    return Dist<Num>::from_entries(second_size_, std::move(entries));
  }

  Dist<Num> first_given_second(Outcome b) const { return swapped().second_given_first(b); }

  JointDist swapped() const {
    std::vector<typename Dist<Num>::Entry> flat;
    flat.reserve(pairs_.support_size());
    for (const auto& [c, w] : pairs_.support()) {
      const auto [a, b] = split(c);
      flat.emplace_back(b * first_size_ + a, w);
    }
    return JointDist(second_size_, first_size_,
                     Dist<Num>::from_entries(first_size_ * second_size_, std::move(flat)));
  }

 private:
  static void check_sizes(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) throw InvariantViolation("empty coordinate domain");
    if (a > std::numeric_limits<std::uint64_t>::max() / b) {
      throw CapExceeded("product domain does not fit in 64 bits");
    }
  }

  Dist<Num> marginal(bool first_coord) const {
    std::vector<std::pair<Outcome, Num>> acc;
    acc.reserve(pairs_.support_size());
    for (const auto& [c, w] : pairs_.support()) {
      const auto [a, b] = split(c);
      acc.emplace_back(first_coord ? a : b, w);
    }
    std::sort(acc.begin(), acc.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    std::vector<typename Dist<Num>::Entry> merged;
    for (auto& [x, w] : acc) {
      if (!merged.empty() && merged.back().first == x) {
        merged.back().second += w;
      } else {
        merged.emplace_back(x, std::move(w));
      }
    }
    return Dist<Num>::from_entries(first_coord ? first_size_ : second_size_, std::move(merged));
  }

  std::uint64_t first_size_ = 0;
  std::uint64_t second_size_ = 0;
  Dist<Num> pairs_;
};

using ExactDist = Dist<Rational>;
using FloatDist = Dist<double>;

inline FloatDist to_float(const ExactDist& d) {
  std::vector<FloatDist::Entry> entries;
  entries.reserve(d.support_size());
  for (const auto& [x, w] : d.support()) entries.emplace_back(x, w.get_d());
  return FloatDist::from_entries(d.domain_size(), std::move(entries));
}

inline JointDist<double> to_float(const JointDist<Rational>& j) {
  return JointDist<double>(j.first_size(), j.second_size(), to_float(j.pairs()));
}

}  // namespace dcrhlab::probkit
