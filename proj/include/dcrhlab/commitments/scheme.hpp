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
#include <string_view>
#include <vector>

namespace dcrhlab::commitments {

enum class Party { sender, receiver };

struct Message {
  Party from = Party::sender;
  std::uint64_t payload = 0;
  int bits = 0;

  friend bool operator==(const Message&, const Message&) = default;
};

struct RoundSpec {
  Party speaker;
  int bits;
};

// The commitment `com`: every message of the commit stage.
struct Transcript {
  std::vector<Message> messages;
  bool aborted = false;
  std::string reason;

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

// "count|bits:hex|bits:hex..." with one S or R tag per message.
std::string serialize(const Transcript& t);
Transcript parse_transcript(std::string_view text);

struct Decommitment {
  std::uint64_t plaintext = 0;
  std::uint64_t sender_coins = 0;

  friend bool operator==(const Decommitment&, const Decommitment&) = default;
};

class CommitmentScheme {
 public:
  virtual ~CommitmentScheme() = default;

  virtual std::string name() const = 0;
  virtual int plaintext_bits() const = 0;
  virtual int sender_coin_bits() const = 0;
  virtual int receiver_coin_bits() const = 0;
  virtual std::vector<RoundSpec> rounds() const = 0;

  // Message for a sender round, given everything sent so far.
  virtual std::uint64_t sender_message(int round, std::span<const Message> so_far, std::uint64_t plaintext,
                                       std::uint64_t coins) const = 0;
  virtual std::uint64_t receiver_message(int round, std::span<const Message> so_far,
                                         std::uint64_t coins) const = 0;

  // Canonical verifier: replays the sender on the revealed plaintext and
  // coins and accepts iff every sender message matches.
  std::optional<std::uint64_t> verify(const Transcript& com, const Decommitment& decom) const;

  bool two_message() const;
};

enum class SessionPhase { commit, committed, opened, aborted };

class SenderSession {
 public:
  SenderSession(const CommitmentScheme& scheme, std::uint64_t plaintext, std::uint64_t coins);

  SessionPhase phase() const { return phase_; }
  bool my_turn() const;
  Message next();
  void receive(const Message& m);
  Decommitment open();
  const Transcript& transcript() const { return transcript_; }

 private:
  void advance();

  const CommitmentScheme& scheme_;
  std::vector<RoundSpec> rounds_;
  std::uint64_t plaintext_;
  std::uint64_t coins_;
  Transcript transcript_;
  SessionPhase phase_ = SessionPhase::commit;
};

class ReceiverSession {
 public:
  ReceiverSession(const CommitmentScheme& scheme, std::uint64_t coins);

  SessionPhase phase() const { return phase_; }
  bool my_turn() const;
  Message next();
  // Malformed messages abort the session and are recorded in the transcript.
  void receive(const Message& m);
  const Transcript& transcript() const { return transcript_; }
  std::optional<std::uint64_t> accept_opening(const Decommitment& d);

 private:
  void advance();

  const CommitmentScheme& scheme_;
  std::vector<RoundSpec> rounds_;
  std::uint64_t coins_;
  Transcript transcript_;
  SessionPhase phase_ = SessionPhase::commit;
};

struct ProtocolRun {
  Transcript com;
  Decommitment decom;
};

ProtocolRun run_protocol(const CommitmentScheme& s, std::uint64_t plaintext, std::uint64_t sender_coins,
                         std::uint64_t receiver_coins);

// f(b || r) under a receiver-chosen 64-bit key.
enum class FunctionKind {
  random,     // f uniformly random, keyed by the receiver's seed
  injective,  // f(x) = x XOR key, perfectly binding
  blind,      // f ignores b
  plaintext,  // f(b || r) = b
};

std::string_view function_kind_name(FunctionKind kind);
FunctionKind parse_function_kind(std::string_view name);

class FunctionCommitment final : public CommitmentScheme {
 public:
  FunctionCommitment(FunctionKind kind, int plaintext_bits, int coin_bits, int output_bits);

  FunctionKind kind() const { return kind_; }
  int output_bits() const { return m_; }
  // f_key(x) for x = b || r.
  std::uint64_t evaluate(std::uint64_t key, std::uint64_t x) const;

  std::string name() const override;
  int plaintext_bits() const override { return l_; }
  int sender_coin_bits() const override { return k_; }
  int receiver_coin_bits() const override { return 64; }
  std::vector<RoundSpec> rounds() const override;
  std::uint64_t sender_message(int round, std::span<const Message> so_far, std::uint64_t plaintext,
                               std::uint64_t coins) const override;
  std::uint64_t receiver_message(int round, std::span<const Message> so_far, std::uint64_t coins) const override;

 private:
  FunctionKind kind_;
  int l_;
  int k_;
  int m_;
};

}  // namespace dcrhlab::commitments
