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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dcrhlab/common/caps.hpp"

namespace dcrhlab::hashfam {

// A total map {0,1}^n -> {0,1}^m stored as a truth table, together with its
// partition of the input space into preimage classes.
class HashFunction {
 public:
  HashFunction(int n, int m, std::vector<std::uint32_t> table, std::string key, int key_bits);

  int n() const { return n_; }
  int m() const { return m_; }
  std::uint64_t input_space() const { return std::uint64_t{1} << n_; }
  std::uint64_t output_space() const { return std::uint64_t{1} << m_; }
  const std::string& key() const { return key_; }
  int key_bits() const { return key_bits_; }
  const std::vector<std::uint32_t>& table() const { return table_; }

  std::uint32_t operator()(std::uint64_t x) const { return table_[x]; }

  // h^{-1}(y); empty when y is outside the image.
  std::span<const std::uint32_t> preimage(std::uint64_t y) const;
  // h^{-1}(h(x)).
  std::span<const std::uint32_t> collision_class(std::uint64_t x) const;

  std::size_t class_count() const { return class_output_.size(); }
  std::uint32_t class_output(std::size_t c) const { return class_output_[c]; }
  std::span<const std::uint32_t> class_members(std::size_t c) const;
  std::size_t class_of(std::uint64_t x) const { return class_of_[x]; }
  bool injective() const { return class_output_.size() == table_.size(); }

  // lcm of all preimage class sizes.
  std::uint64_t class_size_lcm() const;

  // Rows "input_index,output_index" in hex after a header line.
  void write_csv(std::ostream& out) const;
  static HashFunction read_csv(std::istream& in, int n, int m);

  friend bool operator==(const HashFunction& a, const HashFunction& b) {
    return a.n_ == b.n_ && a.m_ == b.m_ && a.table_ == b.table_;
  }

 private:
  int n_;
  int m_;
  std::vector<std::uint32_t> table_;
  std::string key_;
  int key_bits_;

  std::vector<std::uint32_t> order_;         // inputs sorted by (h(x), x)
  std::vector<std::uint32_t> class_start_;   // offsets into order_, one past the end last
  std::vector<std::uint32_t> class_output_;  // output of each class, increasing
  std::vector<std::uint32_t> class_of_;
};

// Exactly {x : h(x) = y}, subject to the enumeration cap.
std::vector<std::uint64_t> preimage_set(const HashFunction& h, std::uint64_t y, const Caps& caps = {});

}  // namespace dcrhlab::hashfam
