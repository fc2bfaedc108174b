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

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dcrhlab/szkcommit/primitives.hpp"
#include "dcrhlab/szkcommit/problem.hpp"

namespace dcrhlab::szkcommit {

// Everything fixed before the IDC phase.
struct Preamble {
  std::vector<std::uint64_t> sbc;    // commitment values the sender saw
  std::vector<std::uint64_t> bound;  // strings those commitments bind to
  std::vector<std::uint64_t> sigma;
  std::vector<const Instance*> instances;
  bool wi_accepted = false;
};

// Deterministic receiver: fixed commitments, instances chosen after sigma.
struct CheatingReceiver {
  std::string name;
  std::vector<std::uint64_t> rho;
  std::function<std::vector<const Instance*>(std::span<const std::uint64_t> sigma)> instances;
};

CheatingReceiver honest_receiver(const PromiseProblem& p, std::uint64_t seed);
// Honest except that every slot of `column` carries x.
CheatingReceiver column_receiver(const PromiseProblem& p, std::uint64_t seed, int column, const Instance& x);
// Every slot carries x.
CheatingReceiver planted_receiver(const PromiseProblem& p, std::uint64_t seed, const Instance& x);

Preamble run_preamble(const PromiseProblem& p, const Sbc& sbc, const CheatingReceiver& r_star,
                      std::span<const std::uint64_t> sigma);
bool admissible_preamble(const PromiseProblem& p, const Preamble& v);

// Delta between the IDC-phase views for m = 0 and m = 1 given the preamble:
// the product of the slot epsilons, or 0 when the sender aborts.
Rational conditional_view_distance(const Preamble& v);
// The same by enumerating every share vector and IDC coin vector.
Rational conditional_view_distance_bruteforce(const Preamble& v, int k);

struct HidingReport {
  std::string receiver;
  int n = 0;
  std::uint64_t preambles = 0;
  Rational yes_rate{0};
  Rational inadmissible_prob{0};
  Rational inadmissible_bound{0};  // 2 (1 - yes_rate)^n
  Rational rejected_prob{0};
  Rational epsilon_given_admissible{0};  // max over admissible preambles of the conditional distance
  Rational max_yes_epsilon{0};           // max over admissible accepted preambles of the largest sent-YES epsilon
  Rational total_distance{0};
  bool admissible_bound_holds = false;
  bool conditional_bound_holds = false;  // each admissible preamble is within its own largest sent-YES epsilon
  bool total_bound_holds = false;        // total <= max_yes_epsilon + inadmissible_prob
  bool ok() const { return admissible_bound_holds && conditional_bound_holds && total_bound_holds; }
};

// Enumerates every sender coin-toss string against r_star.
HidingReport hiding_experiment(const PromiseProblem& p, const Sbc& sbc, const CheatingReceiver& r_star);

struct Opening {
  std::vector<std::uint64_t> shares;
  std::vector<std::uint64_t> coins;
  std::uint64_t plaintext = 0;
};

struct SenderPlay {
  std::vector<std::uint64_t> commitments;
  Opening first;
  std::optional<Opening> second;
};

struct SenderView {
  std::span<const std::uint64_t> sbc;
  std::span<const Instance* const> instances;
  bool wi_verdict = false;
};

// Cheating sender, deterministic given its tape.
struct CheatingSender {
  std::string name;
  std::uint64_t tape_space = 1;
  std::function<std::vector<std::uint64_t>(std::uint64_t tape)> sigma;
  std::function<SenderPlay(const SenderView& view, std::uint64_t tape)> play;
};

CheatingSender honest_sender(const PromiseProblem& p);
// Commits honestly except at the first slot whose instance has a cross-bit
// collision, which it can open both ways. With `peek`, it skips slots whose
// SBC value visibly contradicts the instance.
CheatingSender equivocating_sender(const PromiseProblem& p, const Sbc& sbc, bool peek = false);

bool opening_valid(std::span<const Instance* const> instances, std::span<const std::uint64_t> commitments,
                   const Opening& o);

struct DeciderResult {
  Rational pr_yes{0};  // Pr[D(x) = YES]
  Rational pr_e{0};    // Pr[E]
  Rational witness_valid{0};
};

// D on a fixed x: averages over receiver coins, the sender's tape, (i*, b*)
// and the final coin.
DeciderResult decider_from_breaker(const PromiseProblem& p, const Sbc& sbc, const CheatingSender& s_star,
                                   const Instance& x);

struct HybridReport {
  std::string sender;
  int n = 0;
  std::uint64_t runs_per_hybrid = 0;
  std::array<Rational, 5> pr_e{};
  Rational epsilon_star{0};      // binding break probability of s_star in a standard execution
  Rational h4_bound{0};          // epsilon_star / (2n)
  Rational decider_success{0};   // Pr[x in Pi_{D(x)}] for x drawn from the sampler
  Rational decider_bound{0};     // (1 + Pr[E]) / 2 with Pr[E] from H0
  Rational e_and_no{0};          // Pr[E and x in Pi_N] in H0
  Rational slack_12{0};          // |Pr[E](H1) - Pr[E](H2)|
  Rational slack_23{0};
  Rational witness_invalid{0};   // runs whose WI witness fails the relation
  bool identical_01 = false;
  bool identical_34 = false;
  bool h4_bound_holds = false;
  bool decider_holds = false;
  bool ok() const { return identical_01 && identical_34 && h4_bound_holds && decider_holds; }
};

HybridReport hybrid_sweep(const PromiseProblem& p, const Sbc& sbc, const CheatingSender& s_star);

}  // namespace dcrhlab::szkcommit
