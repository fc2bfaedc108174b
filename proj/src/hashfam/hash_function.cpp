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

#include "dcrhlab/hashfam/hash_function.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>

#include "dcrhlab/common/bits.hpp"
#include "dcrhlab/common/csv.hpp"
#include "dcrhlab/common/error.hpp"
#include "dcrhlab/common/hex.hpp"

namespace dcrhlab::hashfam {

HashFunction::HashFunction(int n, int m, std::vector<std::uint32_t> table, std::string key, int key_bits)
    : n_(n), m_(m), table_(std::move(table)), key_(std::move(key)), key_bits_(key_bits) {
  if (n < 1 || m < 1) throw InvariantViolation("hash lengths must be at least 1");
  if (m > 32) throw CapExceeded("output length above 32 bits");
  check_input_bits(n, Caps{.max_input_bits = Caps{}.hard_input_bits});
  if (table_.size() != input_space()) throw InvariantViolation("truth table size is not 2^n");
  const std::uint64_t out_mask = low_mask(m);
  for (std::uint32_t y : table_) {
    if (y > out_mask) throw InvariantViolation("truth table entry exceeds m bits");
  }

  order_.resize(table_.size());
  std::iota(order_.begin(), order_.end(), 0U);
  std::stable_sort(order_.begin(), order_.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return table_[a] < table_[b]; });
  class_of_.resize(table_.size());
  for (std::uint32_t i = 0; i < order_.size(); ++i) {
    const std::uint32_t y = table_[order_[i]];
    if (class_output_.empty() || class_output_.back() != y) {
      class_output_.push_back(y);
      class_start_.push_back(i);
    }
    class_of_[order_[i]] = static_cast<std::uint32_t>(class_output_.size() - 1);
  }
  class_start_.push_back(static_cast<std::uint32_t>(order_.size()));
}

std::span<const std::uint32_t> HashFunction::class_members(std::size_t c) const {
  return std::span<const std::uint32_t>(order_).subspan(class_start_[c], class_start_[c + 1] - class_start_[c]);
}

std::span<const std::uint32_t> HashFunction::preimage(std::uint64_t y) const {
  auto it = std::lower_bound(class_output_.begin(), class_output_.end(), y);
  if (it == class_output_.end() || *it != y) return {};
  return class_members(static_cast<std::size_t>(it - class_output_.begin()));
}

std::span<const std::uint32_t> HashFunction::collision_class(std::uint64_t x) const {
  return class_members(class_of_[x]);
}

std::uint64_t HashFunction::class_size_lcm() const {
  std::uint64_t l = 1;
  for (std::size_t c = 0; c < class_count(); ++c) l = lcm_checked(l, class_members(c).size());
  return l;
}

void HashFunction::write_csv(std::ostream& out) const {
  CsvWriter w(out, {"input_index", "output_index"});
  for (std::uint64_t x = 0; x < table_.size(); ++x) w.row({hex_word(x, n_), hex_word(table_[x], m_)});
}

HashFunction HashFunction::read_csv(std::istream& in, int n, int m) {
  std::string line;
  if (!std::getline(in, line) || split_csv_line(line) != std::vector<std::string>{"input_index", "output_index"}) {
    throw ConfigError("truth table CSV is missing its header");
  }
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<std::uint32_t> table(size);
  std::vector<bool> seen(size, false);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 2) throw ConfigError("truth table row must have two fields");
    const std::uint64_t x = parse_hex_word(f[0]);
    if (x >= size || seen[x]) throw ConfigError("truth table row has a bad or repeated input");
    seen[x] = true;
    table[x] = static_cast<std::uint32_t>(parse_hex_word(f[1]));
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw ConfigError("truth table is not total");
  }
  return HashFunction(n, m, std::move(table), "table", static_cast<int>(size) * m);
}

std::vector<std::uint64_t> preimage_set(const HashFunction& h, std::uint64_t y, const Caps& caps) {
  check_input_bits(h.n(), caps);
  auto s = h.preimage(y);
  return {s.begin(), s.end()};
}

}  // namespace dcrhlab::hashfam
