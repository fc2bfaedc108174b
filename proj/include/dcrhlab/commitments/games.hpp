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
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dcrhlab/commitments/scheme.hpp"
#include "dcrhlab/hashfam/family.hpp"
#include "dcrhlab/probkit/rational.hpp"

namespace dcrhlab::commitments {

using probkit::Rational;

// A deterministic cheating receiver: its next message from what it has seen.
struct ReceiverStrategy {
  std::string name;
  std::function<std::uint64_t(int round, std::span<const Message> so_far)> next;
};

// Sends a fixed first message (a fixed h for two-message schemes).
ReceiverStrategy fixed_receiver(std::uint64_t message);

struct HidingResult {
  Rational epsilon{0};  // max over plaintext pairs of Delta(view(b0), view(b1))
  std::uint64_t b0 = 0;
  std::uint64_t b1 = 1;
};

HidingResult hiding_distance(const CommitmentScheme& s, const ReceiverStrategy& r_star);
HidingResult hiding_distance_max(const CommitmentScheme& s, const std::vector<ReceiverStrategy>& r_stars);

struct Equivocation {
  Transcript com;
  Decommitment decom;
  Decommitment decom_prime;
};

// Cheating sender for two-message schemes, deterministic given the tape.
struct SenderStrategy {
  std::string name;
  std::uint64_t tape_space = 1;
  std::function<std::optional<Equivocation>(const Message& receiver_message, std::uint64_t tape)> run;
};

SenderStrategy honest_sender_strategy(const CommitmentScheme& s);
// Commits honestly under tape (b, r), then searches every (b', r') for a
// distinct opening of the same commitment.
SenderStrategy brute_force_equivocator(const CommitmentScheme& s);

struct BindingResult {
  Rational break_prob{0};
  std::vector<Equivocation> witnesses;  // first few successful runs
};

// Probability over the listed receiver coins (uniform) and all tapes.
BindingResult binding_break_probability(const CommitmentScheme& s, const SenderStrategy& s_star,
                                        const std::vector<std::uint64_t>& receiver_coins,
                                        std::size_t max_witnesses = 8);

// h(b || r) = S(h, b; r) with h the receiver's first message.
hashfam::HashFamily scheme_to_hash_family(const CommitmentScheme& s, const std::vector<std::uint64_t>& receiver_coins);
std::vector<std::uint64_t> sample_receiver_coins(std::uint64_t seed, std::size_t count);

struct EquivocationReport {
  Rational rate{0};          // Pr_Col[b != b']
  Rational rate_via_col{0};  // the same from the Col pair law
  Rational same_rate{0};     // Pr_Col[b == b']
  Rational epsilon{0};       // hiding distance for this h
  Rational eps_joint{0};     // Delta((C, B_C), (C, B)) = E_c Delta(B_c, B)
  Rational markov_mass{0};   // Pr_c[Delta(B_c, B) >= sqrt(eps)]; Pr_c[Delta > 0] when eps = 0
  bool rate_bound_holds = false;
  bool markov_holds = false;
  bool string_bound_holds = false;  // Pr[b == b'] <= 2^-l + 2 sqrt(eps)
  bool openings_valid = false;      // every Col pair yields two accepted openings
  double bound = 0;                 // 1/2 - 2 sqrt(eps)
  double string_bound = 0;          // 2^-l + 2 sqrt(eps)
};

// h must come from scheme_to_hash_family on the same scheme.
EquivocationReport col_equivocation_rate(const CommitmentScheme& s, const hashfam::HashFunction& h);
Rational string_variant_rate(const CommitmentScheme& s, const hashfam::HashFunction& h);

struct RateRow {
  std::string scheme;
  std::size_t h_index;
  double epsilon;
  double rate;
  double bound;
};

void write_rate_csv(std::ostream& out, const std::vector<RateRow>& rows);

}  // namespace dcrhlab::commitments
