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

#include <bit>
#include <cstdint>
#include <numeric>
#include <string>

namespace dcrhlab {

constexpr std::uint64_t low_mask(int bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

constexpr std::uint64_t pow2(int bits) { return std::uint64_t{1} << bits; }

constexpr int parity(std::uint64_t v) { return std::popcount(v) & 1; }

// Smallest b with 2^b >= v (v >= 1).
constexpr int bit_width_for(std::uint64_t v) {
  return v <= 1 ? 0 : static_cast<int>(std::bit_width(v - 1));
}

// Renders the low `width` bits of v most-significant first, e.g. (2, 3) -> "010".
std::string bit_string(std::uint64_t v, int width);

std::uint64_t lcm_checked(std::uint64_t a, std::uint64_t b);

}  // namespace dcrhlab
