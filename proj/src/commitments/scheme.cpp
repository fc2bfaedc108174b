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

#include "dcrhlab/commitments/scheme.hpp"

#include <utility>

#include "dcrhlab/common/bits.hpp"
#include "dcrhlab/common/error.hpp"
#include "dcrhlab/common/hex.hpp"
#include "dcrhlab/common/rng.hpp"

namespace dcrhlab::commitments {
namespace {

char party_tag(Party p) { return p == Party::sender ? 'S' : 'R'; }

bool fits(std::uint64_t v, int bits) { return bits >= 64 || v <= low_mask(bits); }

std::string check_message(const RoundSpec& spec, const Message& m) {
  if (m.from != spec.speaker) return "message from the wrong party";
  if (m.bits != spec.bits) return "message length mismatch";
  if (!fits(m.payload, m.bits)) return "payload exceeds declared length";
  return {};
}

void check_coins(std::uint64_t coins, int bits, const char* who) {
  if (!fits(coins, bits)) throw ConfigError(std::string(who) + " coins exceed the declared length");
}

}  // namespace

std::string serialize(const Transcript& t) {
  std::string out = std::to_string(t.messages.size());
  for (const Message& m : t.messages) {
    out += '|';
    out += party_tag(m.from);
    out += std::to_string(m.bits);
    out += ':';
    out += hex_word(m.payload, m.bits);
  }
  if (t.aborted) out += "|abort";
  return out;
}

Transcript parse_transcript(std::string_view text) {
  Transcript t;
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t bar = text.find('|', start);
    parts.push_back(text.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  if (!parts.empty() && parts.back() == "abort") {
    t.aborted = true;
    parts.pop_back();
  }
  if (parts.empty() || parts[0].empty()) throw ProtocolError("transcript without a message count");
  std::size_t count = 0;
  for (char c : parts[0]) {
    if (c < '0' || c > '9') throw ProtocolError("bad message count");
    count = count * 10 + static_cast<std::size_t>(c - '0');
  }
  if (count != parts.size() - 1) throw ProtocolError("message count does not match the list");
  for (std::size_t i = 1; i < parts.size(); ++i) {
    std::string_view p = parts[i];
    std::size_t colon = p.find(':');
    if (p.size() < 3 || colon == std::string_view::npos || (p[0] != 'S' && p[0] != 'R')) {
      throw ProtocolError("malformed message field");
    }
    Message m;
    m.from = p[0] == 'S' ? Party::sender : Party::receiver;
    m.bits = 0;
    for (char c : p.substr(1, colon - 1)) {
      if (c < '0' || c > '9') throw ProtocolError("bad message length");
      m.bits = m.bits * 10 + (c - '0');
    }
    if (m.bits < 0 || m.bits > 64) throw ProtocolError("message length out of range");
    std::string_view hex = p.substr(colon + 1);
    if (static_cast<int>(hex.size()) != (m.bits + 3) / 4) throw ProtocolError("hex width mismatch");
    m.payload = parse_hex_word(hex);
    if (!fits(m.payload, m.bits)) throw ProtocolError("payload exceeds declared length");
    t.messages.push_back(m);
  }
  return t;
}

std::optional<std::uint64_t> CommitmentScheme::verify(const Transcript& com, const Decommitment& decom) const {
  if (com.aborted) return std::nullopt;
  if (!fits(decom.plaintext, plaintext_bits()) || !fits(decom.sender_coins, sender_coin_bits())) {
    return std::nullopt;
  }
  const std::vector<RoundSpec> spec = rounds();
  if (com.messages.size() != spec.size()) return std::nullopt;
  std::span<const Message> all(com.messages);
  for (std::size_t j = 0; j < spec.size(); ++j) {
    if (!check_message(spec[j], com.messages[j]).empty()) return std::nullopt;
    if (spec[j].speaker != Party::sender) continue;
    std::uint64_t expect = sender_message(static_cast<int>(j), all.first(j), decom.plaintext, decom.sender_coins);
    if (expect != com.messages[j].payload) return std::nullopt;
  }
  return decom.plaintext;
}

bool CommitmentScheme::two_message() const {
  const std::vector<RoundSpec> spec = rounds();
  return spec.size() == 2 && spec[0].speaker == Party::receiver && spec[1].speaker == Party::sender;
}

SenderSession::SenderSession(const CommitmentScheme& scheme, std::uint64_t plaintext, std::uint64_t coins)
    : scheme_(scheme), rounds_(scheme.rounds()), plaintext_(plaintext), coins_(coins) {
  if (!fits(plaintext, scheme.plaintext_bits())) throw ConfigError("plaintext exceeds the declared length");
  check_coins(coins, scheme.sender_coin_bits(), "sender");
  if (rounds_.empty()) phase_ = SessionPhase::committed;
}

bool SenderSession::my_turn() const {
  return phase_ == SessionPhase::commit && rounds_[transcript_.messages.size()].speaker == Party::sender;
}

Message SenderSession::next() {
  if (!my_turn()) throw ProtocolError("sender asked to speak out of turn");
  const int round = static_cast<int>(transcript_.messages.size());
  Message m{Party::sender, scheme_.sender_message(round, transcript_.messages, plaintext_, coins_),
            rounds_[static_cast<std::size_t>(round)].bits};
  if (!fits(m.payload, m.bits)) throw InvariantViolation("scheme produced an oversized sender message");
  transcript_.messages.push_back(m);
  advance();
  return m;
}

void SenderSession::receive(const Message& m) {
  if (phase_ != SessionPhase::commit || my_turn()) throw ProtocolError("sender received a message out of turn");
  std::string bad = check_message(rounds_[transcript_.messages.size()], m);
  transcript_.messages.push_back(m);
  if (!bad.empty()) {
    transcript_.aborted = true;
    transcript_.reason = bad;
    phase_ = SessionPhase::aborted;
    return;
  }
  advance();
}

void SenderSession::advance() {
  if (transcript_.messages.size() == rounds_.size()) phase_ = SessionPhase::committed;
}

Decommitment SenderSession::open() {
  if (phase_ != SessionPhase::committed) throw ProtocolError("sender cannot open before the commit stage ends");
  phase_ = SessionPhase::opened;
  return {plaintext_, coins_};
}

ReceiverSession::ReceiverSession(const CommitmentScheme& scheme, std::uint64_t coins)
    : scheme_(scheme), rounds_(scheme.rounds()), coins_(coins) {
  check_coins(coins, scheme.receiver_coin_bits(), "receiver");
  if (rounds_.empty()) phase_ = SessionPhase::committed;
}

bool ReceiverSession::my_turn() const {
  return phase_ == SessionPhase::commit && rounds_[transcript_.messages.size()].speaker == Party::receiver;
}

Message ReceiverSession::next() {
  if (!my_turn()) throw ProtocolError("receiver asked to speak out of turn");
  const int round = static_cast<int>(transcript_.messages.size());
  Message m{Party::receiver, scheme_.receiver_message(round, transcript_.messages, coins_),
            rounds_[static_cast<std::size_t>(round)].bits};
  if (!fits(m.payload, m.bits)) throw InvariantViolation("scheme produced an oversized receiver message");
  transcript_.messages.push_back(m);
  advance();
  return m;
}

void ReceiverSession::receive(const Message& m) {
  if (phase_ != SessionPhase::commit || my_turn()) throw ProtocolError("receiver got a message out of turn");
  std::string bad = check_message(rounds_[transcript_.messages.size()], m);
  transcript_.messages.push_back(m);
  if (!bad.empty()) {
    transcript_.aborted = true;
    transcript_.reason = bad;
    phase_ = SessionPhase::aborted;
    return;
  }
  advance();
}

void ReceiverSession::advance() {
  if (transcript_.messages.size() == rounds_.size()) phase_ = SessionPhase::committed;
}

std::optional<std::uint64_t> ReceiverSession::accept_opening(const Decommitment& d) {
  if (phase_ != SessionPhase::committed) return std::nullopt;
  phase_ = SessionPhase::opened;
  return scheme_.verify(transcript_, d);
}

ProtocolRun run_protocol(const CommitmentScheme& s, std::uint64_t plaintext, std::uint64_t sender_coins,
                         std::uint64_t receiver_coins) {
  SenderSession sender(s, plaintext, sender_coins);
  ReceiverSession receiver(s, receiver_coins);
  while (receiver.phase() == SessionPhase::commit && sender.phase() == SessionPhase::commit) {
    if (sender.my_turn()) {
      receiver.receive(sender.next());
    } else {
      sender.receive(receiver.next());
    }
  }
  ProtocolRun run{receiver.transcript(), {}};
  if (sender.phase() == SessionPhase::committed && !run.com.aborted) run.decom = sender.open();
  return run;
}

std::string_view function_kind_name(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::random: return "random";
    case FunctionKind::injective: return "injective";
    case FunctionKind::blind: return "blind";
    case FunctionKind::plaintext: return "plaintext";
  }
  return "?";
}

FunctionKind parse_function_kind(std::string_view name) {
  for (FunctionKind k : {FunctionKind::random, FunctionKind::injective, FunctionKind::blind, FunctionKind::plaintext}) {
    if (function_kind_name(k) == name) return k;
  }
  throw ConfigError("unknown scheme: " + std::string(name));
}

FunctionCommitment::FunctionCommitment(FunctionKind kind, int plaintext_bits, int coin_bits, int output_bits)
    : kind_(kind), l_(plaintext_bits), k_(coin_bits), m_(output_bits) {
  if (l_ < 1 || k_ < 0 || l_ + k_ > 32) throw ConfigError("plaintext plus coin bits must lie in 1..32");
  if (kind == FunctionKind::injective && m_ != l_ + k_) throw ConfigError("injective scheme needs m = l + k");
  if (kind == FunctionKind::plaintext && m_ != l_) throw ConfigError("plaintext scheme needs m = l");
  if (m_ < 1 || m_ > 32) throw ConfigError("output bits must lie in 1..32");
}

std::uint64_t FunctionCommitment::evaluate(std::uint64_t key, std::uint64_t x) const {
  const std::uint64_t r = x & low_mask(k_);
  switch (kind_) {
    case FunctionKind::random: return splitmix64(key ^ splitmix64(x)) & low_mask(m_);
    case FunctionKind::injective: return (x ^ key) & low_mask(m_);
    case FunctionKind::blind: return splitmix64(key ^ splitmix64(r)) & low_mask(m_);
    case FunctionKind::plaintext: return x >> k_;
  }
  return 0;
}

std::string FunctionCommitment::name() const { return std::string(function_kind_name(kind_)) + "-function"; }

std::vector<RoundSpec> FunctionCommitment::rounds() const {
  return {{Party::receiver, 64}, {Party::sender, m_}};
}

std::uint64_t FunctionCommitment::sender_message(int round, std::span<const Message> so_far, std::uint64_t plaintext,
                                                 std::uint64_t coins) const {
  if (round != 1 || so_far.size() != 1) throw ProtocolError("sender speaks only in round 1");
  return evaluate(so_far[0].payload, (plaintext << k_) | coins);
}

std::uint64_t FunctionCommitment::receiver_message(int round, std::span<const Message> so_far,
                                                   std::uint64_t coins) const {
  if (round != 0 || !so_far.empty()) throw ProtocolError("receiver speaks only in round 0");
  return coins;
}

}  // namespace dcrhlab::commitments
