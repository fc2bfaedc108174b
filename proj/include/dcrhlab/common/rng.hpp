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
#include <initializer_list>
#include <random>

namespace dcrhlab {

std::uint64_t splitmix64(std::uint64_t x);

// Derives an independent stream seed from a base seed and a list of tags.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags);

// Seeded generator with portable bounded sampling. std::uniform_int_distribution
// is implementation-defined, which would break byte-identical reports across
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::uint64_t bits(int count);
  // Uniform in [0, bound), bound >= 1.
  std::uint64_t below(std::uint64_t bound);
  // Uniform double in [0, 1).
  double unit();

 private:
  std::mt19937_64 engine_;
};

}  // namespace dcrhlab
