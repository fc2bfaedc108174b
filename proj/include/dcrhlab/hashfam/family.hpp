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
#include <string>
#include <string_view>
#include <vector>

#include "dcrhlab/hashfam/hash_function.hpp"

namespace dcrhlab::hashfam {

enum class FamilyKind { identity, constant, affine, uniform, degree2, parity };

std::string_view family_name(FamilyKind kind);
FamilyKind parse_family(std::string_view name);
// The five families used by sweeps; parity is a fixed single-function helper.
const std::vector<FamilyKind>& toy_families();

struct FamilySpec {
  FamilyKind kind = FamilyKind::uniform;
  int n = 3;
  int m = 0;     // 0 selects the kind's default output length
  int keys = 4;  // sampled keys for seeded families
  std::uint64_t seed = 1;
};

int default_output_bits(FamilyKind kind, int n);

// A hash family with an enumerated key space; h is uniform over keys().
class HashFamily {
 public:
  HashFamily(std::string name, int n, int m, int key_bits, std::vector<HashFunction> keys);

  const std::string& name() const { return name_; }
  int n() const { return n_; }
  int m() const { return m_; }
  int key_bits() const { return key_bits_; }
  std::size_t size() const { return keys_.size(); }
  const HashFunction& key(std::size_t i) const { return keys_[i]; }
  const std::vector<HashFunction>& keys() const { return keys_; }

  // lcm over keys of all preimage class sizes.
  std::uint64_t class_size_lcm() const;

 private:
  std::string name_;
  int n_;
  int m_;
  int key_bits_;
  std::vector<HashFunction> keys_;
};

HashFamily make_family(const FamilySpec& spec, const Caps& caps = {});

HashFunction identity_function(int n);
HashFunction constant_function(int n, int m, std::uint32_t value);
HashFunction parity_function(int n);

}  // namespace dcrhlab::hashfam
