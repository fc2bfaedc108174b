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

#include "dcrhlab/szkcommit/protocol.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "dcrhlab/common/bits.hpp"
#include "dcrhlab/common/error.hpp"
#include "dcrhlab/common/hex.hpp"
#include "dcrhlab/common/rng.hpp"

namespace dcrhlab::szkcommit {
namespace {

constexpr int kMaxSteps = 64;

std::optional<std::uint64_t> parse_field(const std::string& payload, int bits) {
  if (static_cast<int>(payload.size()) != (bits + 3) / 4) return std::nullopt;
  for (char c : payload) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F'))) return std::nullopt;
  }
  const std::uint64_t v = parse_hex_word(payload);
  if (v > low_mask(bits)) return std::nullopt;
  return v;
}

ProtocolMessage abort_notice() { return {Phase::done, 0, ""}; }

bool is_abort(const ProtocolMessage& m) { return m.phase == Phase::done; }

class QueueEnd final : public Transport {
 public:
  QueueEnd(std::shared_ptr<std::deque<ProtocolMessage>> in, std::shared_ptr<std::deque<ProtocolMessage>> out)
      : in_(std::move(in)), out_(std::move(out)) {}
  void send(const ProtocolMessage& m) override { out_->push_back(m); }
  std::optional<ProtocolMessage> receive() override {
    if (in_->empty()) return std::nullopt;
    ProtocolMessage m = std::move(in_->front());
    in_->pop_front();
    return m;
  }

 private:
  std::shared_ptr<std::deque<ProtocolMessage>> in_;
  std::shared_ptr<std::deque<ProtocolMessage>> out_;
};

class TamperingTransport final : public Transport {
 public:
  TamperingTransport(Transport& inner, const Tamper& tamper) : inner_(inner), tamper_(tamper) {}
  void send(const ProtocolMessage& m) override {
    ProtocolMessage copy = m;
    if (tamper_) tamper_(copy);
    inner_.send(copy);
  }
  std::optional<ProtocolMessage> receive() override { return inner_.receive(); }

 private:
  Transport& inner_;
  const Tamper& tamper_;
};

// Verification shared by the live receiver and log replay.
std::optional<std::uint64_t> decide(const std::vector<const Instance*>& instances,
                                    const std::vector<std::optional<std::uint64_t>>& idc,
                                    const std::vector<std::optional<std::uint64_t>>& openings,
                                    std::optional<std::uint64_t> plaintext, int k) {
  if (!plaintext) return std::nullopt;
  std::uint64_t x = 0;
  for (std::size_t j = 0; j < instances.size(); ++j) {
    if (!idc[j] || !openings[j]) return std::nullopt;
    const std::uint64_t share = *openings[j] >> k;
    if (!instances[j]->verify(*idc[j], share, *openings[j] & low_mask(k))) return std::nullopt;
    x ^= share;
  }
  if (x != *plaintext) return std::nullopt;
  return plaintext;
}

}  // namespace

std::string_view phase_name(Phase p) {
  switch (p) {
    case Phase::coin_toss: return "coin-toss";
    case Phase::instance_gen: return "instance-gen";
    case Phase::commit: return "commit";
    case Phase::open: return "open";
    case Phase::done: return "done";
  }
  return "?";
}

Phase parse_phase(std::string_view name) {
  for (Phase p : {Phase::coin_toss, Phase::instance_gen, Phase::commit, Phase::open, Phase::done}) {
    if (phase_name(p) == name) return p;
  }
  throw ProtocolError("unknown phase: " + std::string(name));
}

std::string frame(const ProtocolMessage& m) {
  return std::string(phase_name(m.phase)) + "," + std::to_string(m.index) + "," + m.payload;
}

ProtocolMessage parse_frame(std::string_view line) {
  const std::size_t a = line.find(',');
  const std::size_t b = a == std::string_view::npos ? a : line.find(',', a + 1);
  if (b == std::string_view::npos || line.find(',', b + 1) != std::string_view::npos) {
    throw ProtocolError("frame needs exactly three fields");
  }
  ProtocolMessage m;
  m.phase = parse_phase(line.substr(0, a));
  const std::string_view idx = line.substr(a + 1, b - a - 1);
  if (idx.empty() || idx.size() > 6) throw ProtocolError("bad message index");
  for (char c : idx) {
    if (c < '0' || c > '9') throw ProtocolError("bad message index");
    m.index = m.index * 10 + static_cast<std::uint32_t>(c - '0');
  }
  m.payload = std::string(line.substr(b + 1));
  for (char c : m.payload) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) throw ProtocolError("payload is not lowercase hex");
  }
  return m;
}

std::pair<std::unique_ptr<Transport>, std::unique_ptr<Transport>> make_queue_pair() {
  auto ab = std::make_shared<std::deque<ProtocolMessage>>();
  auto ba = std::make_shared<std::deque<ProtocolMessage>>();
  return {std::make_unique<QueueEnd>(ba, ab), std::make_unique<QueueEnd>(ab, ba)};
}

void StreamTransport::send(const ProtocolMessage& m) { out_ << frame(m) << '\n'; }

std::optional<ProtocolMessage> StreamTransport::receive() {
  std::string line;
  if (!std::getline(in_, line)) return std::nullopt;
  return parse_frame(line);
}

void TranscriptLog::write(std::ostream& out) const {
  for (const LogEntry& e : entries_) out << (e.from == Role::sender ? 'S' : 'R') << ',' << frame(e.message) << '\n';
}

TranscriptLog TranscriptLog::read(std::istream& in) {
  TranscriptLog log;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.size() < 2 || (line[0] != 'S' && line[0] != 'R') || line[1] != ',') {
      throw ProtocolError("log line without a party tag");
    }
    log.record(line[0] == 'S' ? Role::sender : Role::receiver, parse_frame(std::string_view(line).substr(2)));
  }
  return log;
}

void LoggingTransport::send(const ProtocolMessage& m) {
  log_.record(self_, m);
  inner_.send(m);
}

ReceiverCoins draw_receiver_coins(const PromiseProblem& p, const Sbc& sbc, std::uint64_t seed) {
  Rng rng(derive_seed(seed, {0x5243}));
  const std::size_t slots = static_cast<std::size_t>(2 * p.params().n);
  ReceiverCoins c;
  for (std::size_t j = 0; j < slots; ++j) {
    c.rho.push_back(rng.bits(p.params().coin_bits));
    c.sbc_coins.push_back(rng.bits(sbc.coin_bits()));
  }
  return c;
}

SenderCoins draw_sender_coins(const PromiseProblem& p, std::uint64_t seed) {
  Rng rng(derive_seed(seed, {0x5343}));
  const int slots = 2 * p.params().n;
  SenderCoins c;
  for (int j = 0; j < slots; ++j) c.sigma.push_back(rng.bits(p.params().coin_bits));
  c.share_bits = rng.bits(slots - 1);
  for (int j = 0; j < slots; ++j) c.idc_coins.push_back(rng.bits(p.params().k));
  return c;
}

ReceiverSession::ReceiverSession(const PromiseProblem& p, const Sbc& sbc, ReceiverCoins coins)
    : p_(p), sbc_(sbc), coins_(std::move(coins)) {
  const std::size_t slots = static_cast<std::size_t>(2 * p.params().n);
  if (coins_.rho.size() != slots || coins_.sbc_coins.size() != slots) throw ConfigError("receiver coins per slot");
  sigma_.resize(slots);
  idc_.resize(slots);
  openings_.resize(slots);
}

void ReceiverSession::fail(std::string why) {
  output_.reset();
  reason_ = std::move(why);
  phase_ = Phase::done;
}

bool ReceiverSession::step(Transport& t) {
  const std::size_t slots = sigma_.size();
  const int k = p_.params().k;
  bool progress = false;
  if (phase_ == Phase::coin_toss && !sent_) {
    for (std::size_t j = 0; j < slots; ++j) {
      const std::uint64_t c = sbc_.commit(coins_.rho[j], coins_.sbc_coins[j]);
      bound_.push_back(coins_.rho[j]);
      t.send({Phase::coin_toss, static_cast<std::uint32_t>(j), hex_word(c, sbc_.commitment_bits())});
    }
    sent_ = true;
    progress = true;
  }
  while (phase_ != Phase::done) {
    std::optional<ProtocolMessage> m = t.receive();
    if (!m) break;
    progress = true;
    if (is_abort(*m)) {
      fail("sender aborted");
      break;
    }
    if (m->phase != phase_ || m->index > slots) {
      fail("message out of phase");
      break;
    }
    std::optional<std::uint64_t> v;
    if (phase_ == Phase::coin_toss && m->index < slots) {
      v = parse_field(m->payload, p_.params().coin_bits);
      if (!v || sigma_[m->index]) {
        fail("malformed coin-toss string");
        return true;
      }
      sigma_[m->index] = v;
    } else if (phase_ == Phase::commit && m->index < slots) {
      v = parse_field(m->payload, p_.params().output_bits);
      if (!v || idc_[m->index]) {
        fail("malformed IDC commitment");
        return true;
      }
      idc_[m->index] = v;
    } else if (phase_ == Phase::open && m->index < slots) {
      v = parse_field(m->payload, 1 + k);
      if (!v || openings_[m->index]) {
        fail("malformed IDC opening");
        return true;
      }
      openings_[m->index] = v;
    } else if (phase_ == Phase::open && m->index == slots) {
      v = parse_field(m->payload, 1);
      if (!v || claimed_) {
        fail("malformed plaintext");
        return true;
      }
      claimed_ = v;
    } else {
      {
        fail("unexpected message");
        return true;
      }
    }

    auto all = [](const auto& xs) {
      for (const auto& x : xs) {
        if (!x) return false;
      }
      return true;
    };
    if (phase_ == Phase::coin_toss && all(sigma_)) {
      std::vector<std::uint64_t> sigma(slots);
      for (std::size_t j = 0; j < slots; ++j) {
        sigma[j] = *sigma_[j];
        r_.push_back(coins_.rho[j] ^ sigma[j]);
        instances_.push_back(&p_.sample(r_.back()));
        t.send({Phase::instance_gen, static_cast<std::uint32_t>(j), instances_.back()->encode()});
      }
      std::vector<std::uint64_t> witness;
      for (int i = 0; i < p_.params().n; ++i) witness.push_back(coins_.rho[slot(i, 0)]);
      wi_ = ideal_wi(p_, bound_, sigma, instances_, 0, witness);
      t.send({Phase::instance_gen, static_cast<std::uint32_t>(slots), wi_.verdict ? "1" : "0"});
      phase_ = Phase::commit;
    } else if (phase_ == Phase::commit && all(idc_)) {
      phase_ = Phase::open;
    } else if (phase_ == Phase::open && all(openings_) && claimed_) {
      output_ = decide(instances_, idc_, openings_, claimed_, k);
      if (!output_) reason_ = "opening rejected";
      phase_ = Phase::done;
    }
  }
  return progress;
}

SenderSession::SenderSession(const PromiseProblem& p, const Sbc& sbc, std::uint64_t plaintext, SenderCoins coins)
    : p_(p), sbc_(sbc), plaintext_(plaintext), coins_(std::move(coins)) {
  const std::size_t slots = static_cast<std::size_t>(2 * p.params().n);
  if (plaintext > 1) throw ConfigError("plaintext is a single bit");
  if (coins_.sigma.size() != slots || coins_.idc_coins.size() != slots) throw ConfigError("sender coins per slot");
  have_sbc_.assign(slots, false);
  have_instance_.assign(slots, false);
  instances_.reserve(slots);
  for (std::size_t j = 0; j < slots; ++j) instances_.emplace_back(p.params().k, p.params().output_bits,
                                                                  std::vector<std::uint32_t>(pow2(1 + p.params().k)));
}

void SenderSession::abort(Transport& t) {
  aborted_ = true;
  phase_ = Phase::done;
  t.send(abort_notice());
}

bool SenderSession::step(Transport& t) {
  const std::size_t slots = have_sbc_.size();
  const int k = p_.params().k;
  bool progress = false;
  if (phase_ == Phase::open) {
    for (std::size_t j = 0; j < slots; ++j) {
      t.send({Phase::open, static_cast<std::uint32_t>(j), hex_word((shares_[j] << k) | coins_.idc_coins[j], 1 + k)});
    }
    t.send({Phase::open, static_cast<std::uint32_t>(slots), hex_word(plaintext_, 1)});
    phase_ = Phase::done;
    return true;
  }
  while (phase_ != Phase::done) {
    std::optional<ProtocolMessage> m = t.receive();
    if (!m) break;
    progress = true;
    if (is_abort(*m)) {
      aborted_ = true;
      phase_ = Phase::done;
      break;
    }
    if (phase_ == Phase::coin_toss && m->phase == Phase::coin_toss && m->index < slots &&
        parse_field(m->payload, sbc_.commitment_bits()) && !have_sbc_[m->index]) {
      have_sbc_[m->index] = true;
      if (std::find(have_sbc_.begin(), have_sbc_.end(), false) == have_sbc_.end()) {
        for (std::size_t j = 0; j < slots; ++j) {
          t.send({Phase::coin_toss, static_cast<std::uint32_t>(j), hex_word(coins_.sigma[j], p_.params().coin_bits)});
        }
        phase_ = Phase::instance_gen;
      }
      continue;
    }
    if (phase_ == Phase::instance_gen && m->phase == Phase::instance_gen && m->index < slots &&
        !have_instance_[m->index]) {
      try {
        instances_[m->index] = Instance::decode(m->payload, k, p_.params().output_bits);
      } catch (const Error&) {
        abort(t);
        break;
      }
      have_instance_[m->index] = true;
      continue;
    }
    if (phase_ == Phase::instance_gen && m->phase == Phase::instance_gen && m->index == slots && !verdict_) {
      const auto v = parse_field(m->payload, 1);
      if (!v || std::find(have_instance_.begin(), have_instance_.end(), false) != have_instance_.end() || *v == 0) {
        abort(t);
        break;
      }
      verdict_ = true;
      shares_ = shares_for(static_cast<int>(slots), plaintext_, coins_.share_bits);
      for (std::size_t j = 0; j < slots; ++j) {
        const std::uint32_t c = instances_[j].commit(shares_[j], coins_.idc_coins[j]);
        t.send({Phase::commit, static_cast<std::uint32_t>(j), hex_word(c, p_.params().output_bits)});
      }
      phase_ = Phase::open;
      break;
    }
    abort(t);
    break;
  }
  return progress;
}

SessionResult run_session(const PromiseProblem& p, const Sbc& sbc, std::uint64_t plaintext, const ReceiverCoins& rc,
                          const SenderCoins& sc, const Tamper& tamper) {
  auto [r_end, s_end] = make_queue_pair();
  SessionResult out;
  LoggingTransport r_log(*r_end, out.log, Role::receiver);
  LoggingTransport s_log(*s_end, out.log, Role::sender);
  TamperingTransport s_wire(s_log, tamper);
  ReceiverSession receiver(p, sbc, rc);
  SenderSession sender(p, sbc, plaintext, sc);
  for (int i = 0; i < kMaxSteps && !receiver.done(); ++i) {
    const bool a = receiver.step(r_log);
    const bool b = sender.step(s_wire);
    if (!a && !b) throw InvariantViolation("protocol stalled in phase " + std::string(phase_name(receiver.phase())));
  }
  if (!receiver.done()) throw InvariantViolation("protocol did not terminate");
  out.output = receiver.output();
  out.wi_accepted = receiver.wi_accepted();
  out.sender_aborted = sender.aborted();
  out.shares = sender.shares();
  out.instances = receiver.instances();
  return out;
}

std::optional<std::uint64_t> replay_log(const PromiseProblem& p, const TranscriptLog& log) {
  const std::size_t slots = static_cast<std::size_t>(2 * p.params().n);
  const int k = p.params().k;
  std::vector<Instance> owned;
  owned.reserve(slots);
  std::vector<const Instance*> instances(slots, nullptr);
  std::vector<std::optional<std::uint64_t>> idc(slots);
  std::vector<std::optional<std::uint64_t>> openings(slots);
  std::optional<std::uint64_t> plaintext;
  for (const LogEntry& e : log.entries()) {
    const ProtocolMessage& m = e.message;
    if (is_abort(m)) return std::nullopt;
    if (e.from == Role::receiver && m.phase == Phase::instance_gen && m.index < slots) {
      owned.push_back(Instance::decode(m.payload, k, p.params().output_bits));
      instances[m.index] = &owned.back();
    } else if (e.from == Role::sender && m.phase == Phase::commit && m.index < slots) {
      idc[m.index] = parse_field(m.payload, p.params().output_bits);
    } else if (e.from == Role::sender && m.phase == Phase::open && m.index < slots) {
      openings[m.index] = parse_field(m.payload, 1 + k);
    } else if (e.from == Role::sender && m.phase == Phase::open && m.index == slots) {
      plaintext = parse_field(m.payload, 1);
    }
  }
  for (const Instance* x : instances) {
    if (!x) return std::nullopt;
  }
  return decide(instances, idc, openings, plaintext, k);
}

CompletenessReport completeness_sweep(const PromiseProblem& p, const Sbc& sbc, std::uint64_t seed) {
  const SzkParams& q = p.params();
  const int slots = 2 * q.n;
  if (slots * q.coin_bits + slots - 1 + q.k > 22) throw CapExceeded("completeness sweep too large");
  const ReceiverCoins rc = draw_receiver_coins(p, sbc, seed);
  CompletenessReport out;
  for (std::uint64_t m = 0; m < 2; ++m) {
    for (std::uint64_t s = 0; s < pow2(slots * q.coin_bits); ++s) {
      SenderCoins sc;
      for (int j = 0; j < slots; ++j) sc.sigma.push_back((s >> (j * q.coin_bits)) & low_mask(q.coin_bits));
      sc.idc_coins.resize(static_cast<std::size_t>(slots));
      for (std::uint64_t sh = 0; sh < pow2(slots - 1); ++sh) {
        sc.share_bits = sh;
        for (std::uint64_t r = 0; r < pow2(q.k); ++r) {
          for (int j = 0; j < slots; ++j) sc.idc_coins[static_cast<std::size_t>(j)] = (r + static_cast<std::uint64_t>(j)) & low_mask(q.k);
          const SessionResult res = run_session(p, sbc, m, rc, sc);
          ++out.runs;
          out.accepted += res.output == m;
        }
      }
    }
  }
  for (const auto* pool : {&p.yes_pool(), &p.no_pool()}) {
    for (const Instance& x : *pool) {
      for (std::uint64_t b = 0; b < 2; ++b) {
        for (std::uint64_t r = 0; r < pow2(q.k); ++r) {
          ++out.idc_checks;
          out.idc_accepted += x.verify(x.commit(b, r), b, r);
        }
      }
    }
  }
  return out;
}

TamperReport tamper_sweep(const PromiseProblem& p, const Sbc& sbc, std::uint64_t seed) {
  const SzkParams& q = p.params();
  const int slots = 2 * q.n;
  if (slots * q.coin_bits > 12) throw CapExceeded("tamper sweep too large");
  const ReceiverCoins rc = draw_receiver_coins(p, sbc, seed);
  TamperReport out;
  for (std::uint64_t s = 0; s < pow2(slots * q.coin_bits); ++s) {
    SenderCoins sc = draw_sender_coins(p, derive_seed(seed, {s}));
    for (int j = 0; j < slots; ++j) sc.sigma[static_cast<std::size_t>(j)] = (s >> (j * q.coin_bits)) & low_mask(q.coin_bits);
    const std::uint64_t m = parity(s);
    const SessionResult honest = run_session(p, sbc, m, rc, sc);
    if (honest.output != m) throw InvariantViolation("honest run rejected during tamper sweep");
    for (int j = 0; j < slots; ++j) {
      const bool no = p.classify(*honest.instances[static_cast<std::size_t>(j)]) == Classification::no;
      const std::uint64_t flipped = honest.shares[static_cast<std::size_t>(j)] ^ 1;
      for (std::uint64_t r = 0; r < pow2(q.k); ++r) {
        for (bool flip_m : {false, true}) {
          const Tamper tamper = [&](ProtocolMessage& msg) {
            if (msg.phase != Phase::open) return;
            if (msg.index == static_cast<std::uint32_t>(j)) msg.payload = hex_word((flipped << q.k) | r, 1 + q.k);
            if (flip_m && msg.index == static_cast<std::uint32_t>(slots)) msg.payload = hex_word(m ^ 1, 1);
          };
          const bool accepted = run_session(p, sbc, m, rc, sc, tamper).output.has_value();
          (no ? out.flips_on_no : out.flips_on_yes)++;
          (no ? out.accepted_on_no : out.accepted_on_yes) += accepted;
        }
      }
    }
  }
  return out;
}

}  // namespace dcrhlab::szkcommit
