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
#include <deque>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dcrhlab/szkcommit/primitives.hpp"
#include "dcrhlab/szkcommit/problem.hpp"

namespace dcrhlab::szkcommit {

enum class Phase { coin_toss, instance_gen, commit, open, done };

std::string_view phase_name(Phase p);
Phase parse_phase(std::string_view name);

// Indices 0..2n-1 address slots; index 2n carries the WI verdict
// (instance-gen) or the plaintext (open). "done,0," is an abort notice.
struct ProtocolMessage {
  Phase phase = Phase::coin_toss;
  std::uint32_t index = 0;
  std::string payload;  // lowercase hex

  friend bool operator==(const ProtocolMessage&, const ProtocolMessage&) = default;
};

// One line per message: "phase,index,payload_hex".
std::string frame(const ProtocolMessage& m);
ProtocolMessage parse_frame(std::string_view line);

class Transport {
 public:
  virtual ~Transport() = default;
  virtual void send(const ProtocolMessage& m) = 0;
  virtual std::optional<ProtocolMessage> receive() = 0;
};

// In-memory duplex channel; each end reads what the other sent.
std::pair<std::unique_ptr<Transport>, std::unique_ptr<Transport>> make_queue_pair();

// Line-framed messages over byte streams.
class StreamTransport final : public Transport {
 public:
  StreamTransport(std::istream& in, std::ostream& out) : in_(in), out_(out) {}
  void send(const ProtocolMessage& m) override;
  std::optional<ProtocolMessage> receive() override;

 private:
  std::istream& in_;
  std::ostream& out_;
};

enum class Role { sender, receiver };

struct LogEntry {
  Role from;
  ProtocolMessage message;

  friend bool operator==(const LogEntry&, const LogEntry&) = default;
};

// Lines "S,<frame>" or "R,<frame>".
class TranscriptLog {
 public:
  void record(Role from, const ProtocolMessage& m) { entries_.push_back({from, m}); }
  const std::vector<LogEntry>& entries() const { return entries_; }
  void write(std::ostream& out) const;
  static TranscriptLog read(std::istream& in);

 private:
  std::vector<LogEntry> entries_;
};

// Records outgoing messages of one party.
class LoggingTransport final : public Transport {
 public:
  LoggingTransport(Transport& inner, TranscriptLog& log, Role self) : inner_(inner), log_(log), self_(self) {}
  void send(const ProtocolMessage& m) override;
  std::optional<ProtocolMessage> receive() override { return inner_.receive(); }

 private:
  Transport& inner_;
  TranscriptLog& log_;
  Role self_;
};

struct ReceiverCoins {
  std::vector<std::uint64_t> rho;
  std::vector<std::uint64_t> sbc_coins;
};

struct SenderCoins {
  std::vector<std::uint64_t> sigma;
  std::uint64_t share_bits = 0;  // the first 2n - 1 shares; the last is fixed by m
  std::vector<std::uint64_t> idc_coins;
};

ReceiverCoins draw_receiver_coins(const PromiseProblem& p, const Sbc& sbc, std::uint64_t seed);
SenderCoins draw_sender_coins(const PromiseProblem& p, std::uint64_t seed);

class ReceiverSession {
 public:
  ReceiverSession(const PromiseProblem& p, const Sbc& sbc, ReceiverCoins coins);

  Phase phase() const { return phase_; }
  bool done() const { return phase_ == Phase::done; }
  // Handles pending input and sends whatever is due; false when nothing happened.
  bool step(Transport& t);
  // Plaintext on acceptance; nullopt is the rejection symbol.
  std::optional<std::uint64_t> output() const { return output_; }
  bool wi_accepted() const { return wi_.verdict; }
  const std::vector<std::uint64_t>& sampler_coins() const { return r_; }
  const std::vector<const Instance*>& instances() const { return instances_; }
  const std::string& reason() const { return reason_; }

 private:
  void fail(std::string why);

  const PromiseProblem& p_;
  const Sbc& sbc_;
  ReceiverCoins coins_;
  Phase phase_ = Phase::coin_toss;
  bool sent_ = false;
  std::vector<std::uint64_t> bound_;
  std::vector<std::optional<std::uint64_t>> sigma_;
  std::vector<std::uint64_t> r_;
  std::vector<const Instance*> instances_;
  WiOutcome wi_;
  std::vector<std::optional<std::uint64_t>> idc_;
  std::vector<std::optional<std::uint64_t>> openings_;
  std::optional<std::uint64_t> claimed_;
  std::optional<std::uint64_t> output_;
  std::string reason_;
};

class SenderSession {
 public:
  SenderSession(const PromiseProblem& p, const Sbc& sbc, std::uint64_t plaintext, SenderCoins coins);

  Phase phase() const { return phase_; }
  bool done() const { return phase_ == Phase::done; }
  bool step(Transport& t);
  bool aborted() const { return aborted_; }
  const std::vector<std::uint64_t>& shares() const { return shares_; }
  const std::vector<Instance>& instances() const { return instances_; }

 private:
  void abort(Transport& t);

  const PromiseProblem& p_;
  const Sbc& sbc_;
  std::uint64_t plaintext_;
  SenderCoins coins_;
  Phase phase_ = Phase::coin_toss;
  std::vector<bool> have_sbc_;
  std::vector<Instance> instances_;
  std::vector<bool> have_instance_;
  std::optional<bool> verdict_;
  std::vector<std::uint64_t> shares_;
  bool aborted_ = false;
};

// Edits a sender message in flight.
using Tamper = std::function<void(ProtocolMessage&)>;

struct SessionResult {
  std::optional<std::uint64_t> output;
  bool wi_accepted = false;
  bool sender_aborted = false;
  std::vector<std::uint64_t> shares;
  std::vector<const Instance*> instances;
  TranscriptLog log;
};

SessionResult run_session(const PromiseProblem& p, const Sbc& sbc, std::uint64_t plaintext, const ReceiverCoins& rc,
                          const SenderCoins& sc, const Tamper& tamper = {});

// Receiver-side decision recomputed from a dumped log.
std::optional<std::uint64_t> replay_log(const PromiseProblem& p, const TranscriptLog& log);

struct CompletenessReport {
  std::uint64_t runs = 0;
  std::uint64_t accepted = 0;
  std::uint64_t idc_checks = 0;
  std::uint64_t idc_accepted = 0;
  bool ok() const { return accepted == runs && idc_accepted == idc_checks; }
};

// Every plaintext, every sender coin-toss string, every share vector and, per
// slot, every IDC coin value (slot j uses r + j mod 2^k as r sweeps 2^k); plus
// every (instance, bit, coins) opening of every pool instance.
CompletenessReport completeness_sweep(const PromiseProblem& p, const Sbc& sbc, std::uint64_t seed);

struct TamperReport {
  std::uint64_t flips_on_no = 0;
  std::uint64_t accepted_on_no = 0;
  std::uint64_t flips_on_yes = 0;
  std::uint64_t accepted_on_yes = 0;
  bool ok() const { return flips_on_no > 0 && accepted_on_no == 0; }
};

// For honest runs over every sender coin-toss string, replaces one slot's
// opening by (share xor 1, r') for every r', with and without flipping m.
TamperReport tamper_sweep(const PromiseProblem& p, const Sbc& sbc, std::uint64_t seed);

}  // namespace dcrhlab::szkcommit
