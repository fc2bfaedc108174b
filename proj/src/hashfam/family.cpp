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

#include "dcrhlab/hashfam/family.hpp"

#include <array>

#include "dcrhlab/common/bits.hpp"
#include "dcrhlab/common/error.hpp"
#include "dcrhlab/common/hex.hpp"
#include "dcrhlab/common/rng.hpp"

namespace dcrhlab::hashfam {
namespace {

constexpr std::array<std::pair<FamilyKind, std::string_view>, 6> kNames = {{
    {FamilyKind::identity, "identity"},
    {FamilyKind::constant, "constant"},
    {FamilyKind::affine, "affine"},
    {FamilyKind::uniform, "uniform"},
    {FamilyKind::degree2, "degree2"},
    {FamilyKind::parity, "parity"},
}};

template <class F>
std::vector<std::uint32_t> tabulate(int n, F&& f) {
  std::vector<std::uint32_t> t(std::uint64_t{1} << n);
  for (std::uint64_t x = 0; x < t.size(); ++x) t[x] = static_cast<std::uint32_t>(f(x));
  return t;
}

HashFunction affine_function(int n, int m, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::uint64_t> rows(m);
  for (auto& r : rows) r = rng.bits(n);
  const std::uint64_t b = rng.bits(m);
  auto table = tabulate(n, [&](std::uint64_t x) {
    std::uint64_t y = 0;
    for (int j = 0; j < m; ++j) y |= static_cast<std::uint64_t>(parity(rows[j] & x)) << j;
    return y ^ b;
  });
  return HashFunction(n, m, std::move(table), hex_word(seed, 64), m * n + m);
}

HashFunction uniform_function(int n, int m, std::uint64_t seed) {
  Rng rng(seed);
  auto table = tabulate(n, [&](std::uint64_t) { return rng.bits(m); });
  const std::uint64_t bits = (std::uint64_t{1} << n) * static_cast<std::uint64_t>(m);
  return HashFunction(n, m, std::move(table), hex_word(seed, 64), static_cast<int>(bits));
}

// Each output bit is a random quadratic form over GF(2).
HashFunction degree2_function(int n, int m, std::uint64_t seed) {
  Rng rng(seed);
  struct Poly {
    std::vector<std::uint64_t> quad;  // quad[a] has bit b set for x_a x_b, b > a
    std::uint64_t lin;
    int constant;
  };
  std::vector<Poly> polys(m);
  for (auto& p : polys) {
    p.quad.resize(n);
    for (int a = 0; a < n; ++a) p.quad[a] = rng.bits(n) & ~low_mask(a + 1);
    p.lin = rng.bits(n);
    p.constant = static_cast<int>(rng.bits(1));
  }
  auto table = tabulate(n, [&](std::uint64_t x) {
    std::uint64_t y = 0;
    for (int j = 0; j < m; ++j) {
      const Poly& p = polys[j];
      int bit = p.constant ^ parity(p.lin & x);
      for (int a = 0; a < n; ++a) {
        if ((x >> a) & 1) bit ^= parity(p.quad[a] & x);
      }
      y |= static_cast<std::uint64_t>(bit) << j;
    }
    return y;
  });
  return HashFunction(n, m, std::move(table), hex_word(seed, 64), m * (n * (n - 1) / 2 + n + 1));
}

}  // namespace

std::string_view family_name(FamilyKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  throw ConfigError("unknown family kind");
}

FamilyKind parse_family(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  throw ConfigError("unknown family '" + std::string(name) + "'");
}

const std::vector<FamilyKind>& toy_families() {
  static const std::vector<FamilyKind> kinds = {FamilyKind::identity, FamilyKind::constant,
                                                FamilyKind::affine, FamilyKind::uniform,
                                                FamilyKind::degree2};
  return kinds;
}

int default_output_bits(FamilyKind kind, int n) {
  switch (kind) {
    case FamilyKind::identity:
      return n;
    case FamilyKind::constant:
    case FamilyKind::parity:
      return 1;
    case FamilyKind::affine:
    case FamilyKind::uniform:
    case FamilyKind::degree2:
      return n > 1 ? n - 1 : 1;
  }
  return n;
}

HashFamily::HashFamily(std::string name, int n, int m, int key_bits, std::vector<HashFunction> keys)
    : name_(std::move(name)), n_(n), m_(m), key_bits_(key_bits), keys_(std::move(keys)) {
  if (keys_.empty()) throw InvariantViolation("hash family with an empty key space");
  for (const auto& h : keys_) {
    if (h.n() != n_ || h.m() != m_) throw InvariantViolation("family member with mismatched lengths");
  }
}

std::uint64_t HashFamily::class_size_lcm() const {
  std::uint64_t l = 1;
  for (const auto& h : keys_) l = lcm_checked(l, h.class_size_lcm());
  return l;
}

HashFunction identity_function(int n) {
  return HashFunction(n, n, tabulate(n, [](std::uint64_t x) { return x; }), "", 0);
}

HashFunction constant_function(int n, int m, std::uint32_t value) {
  return HashFunction(n, m, tabulate(n, [&](std::uint64_t) { return value; }), hex_word(value, m), m);
}

HashFunction parity_function(int n) {
  return HashFunction(n, 1, tabulate(n, [](std::uint64_t x) { return parity(x); }), "", 0);
}

HashFamily make_family(const FamilySpec& spec, const Caps& caps) {
  check_input_bits(spec.n, caps);
  const int n = spec.n;
  const int m = spec.m > 0 ? spec.m : default_output_bits(spec.kind, n);
  const std::string name(family_name(spec.kind));
  if (spec.keys < 1) throw ConfigError("family needs at least one key");
  std::vector<HashFunction> keys;
  switch (spec.kind) {
    case FamilyKind::identity:
      if (m != n) throw ConfigError("identity family requires m = n");
      keys.push_back(identity_function(n));
      return HashFamily(name, n, m, 0, std::move(keys));
    case FamilyKind::parity:
      if (m != 1) throw ConfigError("parity family requires m = 1");
      keys.push_back(parity_function(n));
      return HashFamily(name, n, m, 0, std::move(keys));
    case FamilyKind::constant:
      if (m > 8) throw CapExceeded("constant family enumerates 2^m keys; m must be at most 8");
      for (std::uint32_t v = 0; v < (1U << m); ++v) keys.push_back(constant_function(n, m, v));
      return HashFamily(name, n, m, m, std::move(keys));
    case FamilyKind::affine:
    case FamilyKind::uniform:
    case FamilyKind::degree2:
      break;
  }
  for (int i = 0; i < spec.keys; ++i) {
    const std::uint64_t s = derive_seed(spec.seed, {static_cast<std::uint64_t>(spec.kind),
                                                    static_cast<std::uint64_t>(n),
                                                    static_cast<std::uint64_t>(m),
                                                    static_cast<std::uint64_t>(i)});
    switch (spec.kind) {
      case FamilyKind::affine:
        keys.push_back(affine_function(n, m, s));
        break;
      case FamilyKind::uniform:
        keys.push_back(uniform_function(n, m, s));
        break;
      default:
        keys.push_back(degree2_function(n, m, s));
        break;
    }
  }
  const int key_bits = keys.front().key_bits();
  return HashFamily(name, n, m, key_bits, std::move(keys));
}

}  // namespace dcrhlab::hashfam
