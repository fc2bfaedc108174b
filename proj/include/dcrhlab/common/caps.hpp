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

namespace dcrhlab {

// Enumeration limits. Exact work scales like 2^n * 2^t, so these bound the
// wall-clock cost of any single exhaustive computation.
struct Caps {
  int max_input_bits = 14;   // default exact cap on n
  int hard_input_bits = 20;  // n may be raised up to this
  int max_tape_bits = 24;    // adversary tapes / coin alphabets

  std::uint64_t max_tape_space() const { return std::uint64_t{1} << max_tape_bits; }
};

void check_input_bits(int n, const Caps& caps);
void check_tape_space(std::uint64_t space, const Caps& caps);

}  // namespace dcrhlab
