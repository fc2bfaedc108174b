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

#include "dcrhlab/probkit/rational.hpp"

#include <cmath>
#include <sstream>

#include "dcrhlab/common/error.hpp"

namespace dcrhlab::probkit {

Rational ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw InvariantViolation("zero denominator");
  Rational q{mpz_class(static_cast<unsigned long>(num)), mpz_class(static_cast<unsigned long>(den))};
  q.canonicalize();
  return q;
}

Rational pow2_inverse(int bits) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(bits));
  return Rational(mpz_class(1), den);
}

std::string to_string(const Rational& q) { return q.get_str(); }

bool leq_sqrt(const Rational& a, const Rational& e) {
  if (e < 0) throw InvariantViolation("square root of a negative rational");
  if (a <= 0) return true;
  return a * a <= e;
}

bool geq_sqrt(const Rational& a, const Rational& e) {
  if (e < 0) throw InvariantViolation("square root of a negative rational");
  if (a < 0) return false;
  return a * a >= e;
}

namespace {

bool is_probable_prime(const mpz_class& v) { return mpz_probab_prime_p(v.get_mpz_t(), 30) > 0; }

// Brent's variant of Pollard rho; v is odd, composite and has no small factors.
mpz_class pollard_rho(const mpz_class& v) {
  for (unsigned long c = 1;; ++c) {
    mpz_class x = 2, y = 2, d = 1, q = 1, ys;
    unsigned long r = 1;
    auto f = [&](const mpz_class& t) -> mpz_class { return (t * t + c) % v; };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min<unsigned long>(128, r - k); ++i) {
          y = f(y);
          mpz_class diff = x - y;
          q = (q * abs(diff)) % v;
        }
        mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), v.get_mpz_t());
        k += 128;
      } while (k < r && d == 1);
      r *= 2;
    } while (d == 1);
    if (d == v) {
      do {
        ys = f(ys);
        mpz_class diff = x - ys;
        mpz_class a = abs(diff);
        mpz_gcd(d.get_mpz_t(), a.get_mpz_t(), v.get_mpz_t());
      } while (d == 1);
    }
    if (d != v) return d;
  }
}

void factor_into(const mpz_class& v, std::map<mpz_class, unsigned>& out) {
  if (v == 1) return;
  if (is_probable_prime(v)) {
    ++out[v];
    return;
  }
  const mpz_class d = pollard_rho(v);
  factor_into(d, out);
  factor_into(v / d, out);
}

}  // namespace

std::vector<std::pair<mpz_class, unsigned>> factorize(const mpz_class& value) {
  if (value <= 0) throw InvariantViolation("factorize expects a positive integer");
  thread_local std::map<mpz_class, std::vector<std::pair<mpz_class, unsigned>>> cache;
  if (auto it = cache.find(value); it != cache.end()) return it->second;

  std::map<mpz_class, unsigned> found;
  mpz_class v = value;
  for (unsigned long p = 2; p < 1000; p += (p == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(v.get_mpz_t(), p)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(v.get_mpz_t(), p)) {
        mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
        ++e;
      }
      found[mpz_class(p)] = e;
    }
  }
  factor_into(v, found);
  std::vector<std::pair<mpz_class, unsigned>> result(found.begin(), found.end());
  if (cache.size() > (1U << 16)) cache.clear();
  cache.emplace(value, result);
  return result;
}

LogLinear LogLinear::infinity() {
  LogLinear v;
  v.infinite_ = true;
  return v;
}

LogLinear LogLinear::log2_of(const Rational& value) {
  if (value <= 0) throw InvariantViolation("log2 of a non-positive rational");
  LogLinear out;
  auto accumulate = [&out](const mpz_class& z, int sign) {
    if (z == 1) return;
    for (const auto& [p, e] : factorize(z)) {
      const Rational coeff(sign * static_cast<long>(e));
      if (p == 2) {
        out.rational_ += coeff;
      } else {
        Rational& slot = out.logs_[p];
        slot += coeff;
        if (slot == 0) out.logs_.erase(p);
      }
    }
  };
  accumulate(value.get_num(), +1);
  accumulate(value.get_den(), -1);
  return out;
}

double LogLinear::to_double() const {
  if (infinite_) return std::numeric_limits<double>::infinity();
  long double acc = rational_.get_d();
  for (const auto& [p, q] : logs_) {
    acc += static_cast<long double>(q.get_d()) * std::log2(static_cast<long double>(p.get_d()));
  }
  return static_cast<double>(acc);
}

std::string LogLinear::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os << rational_.get_str();
  for (const auto& [p, q] : logs_) {
    os << (q < 0 ? " - " : " + ") << Rational(abs(q)).get_str() << "*log2(" << p.get_str() << ")";
  }
  return os.str();
}

void LogLinear::add_scaled(const LogLinear& other, const Rational& scale) {
  if (other.infinite_) {
    if (scale == 0) return;  // 0 * inf = 0
    if (infinite_ && scale < 0) throw InvariantViolation("inf - inf is undefined");
    if (scale < 0) throw InvariantViolation("negative infinity is not representable");
    infinite_ = true;
    return;
  }
  if (infinite_) return;
  rational_ += other.rational_ * scale;
  for (const auto& [p, q] : other.logs_) {
    Rational& slot = logs_[p];
    slot += q * scale;
    if (slot == 0) logs_.erase(p);
  }
}

LogLinear& LogLinear::operator+=(const LogLinear& other) {
  add_scaled(other, Rational(1));
  return *this;
}

LogLinear& LogLinear::operator-=(const LogLinear& other) {
  add_scaled(other, Rational(-1));
  return *this;
}

LogLinear& LogLinear::operator*=(const Rational& scale) {
  if (infinite_) {
    if (scale < 0) throw InvariantViolation("negative infinity is not representable");
    if (scale == 0) *this = LogLinear();
    return *this;
  }
  if (scale == 0) {
    *this = LogLinear();
    return *this;
  }
  rational_ *= scale;
  for (auto& [p, q] : logs_) q *= scale;
  return *this;
}

bool operator==(const LogLinear& a, const LogLinear& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.rational_ == b.rational_ && a.logs_ == b.logs_;
}

}  // namespace dcrhlab::probkit
