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

#include "dcrhlab/probkit/logsum.hpp"

#include <cmath>

#include "dcrhlab/common/error.hpp"

namespace dcrhlab::probkit {

void LogSum::add(std::int64_t num, std::uint64_t den, std::uint64_t value) {
  if (den == 0) throw InvariantViolation("log-sum weight with zero denominator");
  if (value == 0) throw InvariantViolation("log2 of zero");
  if (num == 0 || value == 1) return;
  auto [it, inserted] = terms_.try_emplace({den, value}, num);
  if (!inserted) {
    it->second += num;
    if (it->second == 0) terms_.erase(it);
  }
}

template <>
Bits<Rational> LogSum::total<Rational>() const {
  std::map<std::uint64_t, Rational> coef;
  for (const auto& [key, num] : terms_) {
    Rational w(mpz_class(static_cast<long>(num)), mpz_class(static_cast<unsigned long>(key.first)));
    w.canonicalize();
    coef[key.second] += w;
  }
  LogLinear out;
  for (const auto& [value, w] : coef) {
    if (w != 0) out += LogLinear::log2_of(Rational(mpz_class(static_cast<unsigned long>(value)))) * w;
  }
  return out;
}

template <>
Bits<double> LogSum::total<double>() const {
  long double acc = 0;
  for (const auto& [key, num] : terms_) {
    acc += static_cast<long double>(num) / static_cast<long double>(key.first) *
           std::log2(static_cast<long double>(key.second));
  }
  return static_cast<double>(acc);
}

}  // namespace dcrhlab::probkit
