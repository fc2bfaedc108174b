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

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace dcrhlab::probkit {

using Rational = mpq_class;

Rational ratio(std::uint64_t num, std::uint64_t den);
Rational pow2_inverse(int bits);  // 2^-bits

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double v) { return v; }

std::string to_string(const Rational& q);

// Exact comparisons against square roots of non-negative rationals.
bool leq_sqrt(const Rational& a, const Rational& e);  // a <= sqrt(e)
bool geq_sqrt(const Rational& a, const Rational& e);  // a >= sqrt(e)

// Prime factorization of a positive integer, primes ascending.
std::vector<std::pair<mpz_class, unsigned>> factorize(const mpz_class& v);

// An exact real of the form  q0 + sum_p q_p * log2(p)  over odd primes p, with
// rational coefficients, or +infinity. Logarithms of distinct primes are
// linearly independent over Q, so equality of two values is decided exactly by
// comparing coefficients. Entropies and divergences of rational distributions
// land in this set.
class LogLinear {
 public:
  LogLinear() = default;
  explicit LogLinear(Rational q) : rational_(std::move(q)) { rational_.canonicalize(); }

  static LogLinear log2_of(const Rational& v);  // v > 0
  static LogLinear infinity();

  bool is_infinite() const { return infinite_; }
  bool is_zero() const { return !infinite_ && rational_ == 0 && logs_.empty(); }
  // True when the value is a plain rational (no irrational log terms).
  bool is_rational() const { return !infinite_ && logs_.empty(); }
  const Rational& rational_part() const { return rational_; }

  double to_double() const;
  std::string to_string() const;

  LogLinear& operator+=(const LogLinear& other);
  LogLinear& operator-=(const LogLinear& other);
  LogLinear& operator*=(const Rational& scale);

  friend LogLinear operator+(LogLinear a, const LogLinear& b) { return a += b; }
  friend LogLinear operator-(LogLinear a, const LogLinear& b) { return a -= b; }
  friend LogLinear operator*(LogLinear a, const Rational& s) { return a *= s; }
  friend LogLinear operator*(const Rational& s, LogLinear a) { return a *= s; }

  friend bool operator==(const LogLinear& a, const LogLinear& b);

 private:
  void add_scaled(const LogLinear& other, const Rational& scale);

  Rational rational_{0};
  std::map<mpz_class, Rational> logs_;  // odd prime -> coefficient, never zero
  bool infinite_ = false;
};

inline double to_double(const LogLinear& v) { return v.to_double(); }

}  // namespace dcrhlab::probkit
