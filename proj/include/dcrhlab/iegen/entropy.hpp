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
#include <optional>
#include <span>
#include <string>

#include "dcrhlab/iegen/generator.hpp"
#include "dcrhlab/probkit/measures.hpp"

namespace dcrhlab::iegen {

using probkit::Bits;

// sum_j H_{Y_j | Z, Y_<j}(y_j | z, y_<j) under G(z, U_s).
template <class Num>
Bits<Num> real_sample_entropy(const BlockGenerator& g, std::uint64_t z, std::span<const std::uint64_t> y_prefix);

template <class Num>
struct RealEntropy {
  Bits<Num> conditional;   // H(Y | Z)
  Bits<Num> by_samples;    // E_{(z, y)} of the real sample-entropy
};

// Throws InvariantViolation when the two routes disagree.
template <class Num>
RealEntropy<Num> real_entropy(const BlockGenerator& g);

// sum_i H_{Y_i | Z, R_<i}(y_i | z, r_<i).
template <class Num>
Bits<Num> accessible_sample_entropy(const OnlineGenerator& gt, const Transcript& t);

template <class Num>
struct AccessibleEntropy {
  Bits<Num> by_blocks;       // sum_i H(Y_i | Z, R_<i)
  Bits<Num> by_transcripts;  // E over transcripts of the accessible sample-entropy
};

// Throws InvariantViolation when the two routes disagree.
template <class Num>
AccessibleEntropy<Num> accessible_entropy(const OnlineGenerator& gt);

struct Consistency {
  bool consistent = true;
  std::optional<Transcript> counterexample;
  std::string reason;
};

// Exhaustively checks that every output of gt is an output of g under the same z.
Consistency check_consistent(const OnlineGenerator& gt, const BlockGenerator& g);

// Pr_{z, x}[H_{Y_i | Z, Y_<i}(y_i | z, y_<i) < k] <= failure.
bool has_real_min_entropy(const BlockGenerator& g, int block, double k, double failure);

}  // namespace dcrhlab::iegen
