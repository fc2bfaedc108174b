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

#include "dcrhlab/commitments/games.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <unordered_map>

#include "dcrhlab/common/bits.hpp"
#include "dcrhlab/common/csv.hpp"
#include "dcrhlab/common/error.hpp"
#include "dcrhlab/common/hex.hpp"
#include "dcrhlab/common/rng.hpp"
#include "dcrhlab/hashfam/game.hpp"

namespace dcrhlab::commitments {
namespace {

using probkit::geq_sqrt;
using probkit::leq_sqrt;
using probkit::pow2_inverse;
using probkit::ratio;

constexpr int kMaxEnumBits = 20;

void require_two_message(const CommitmentScheme& s) {
  if (!s.two_message()) throw ConfigError(s.name() + " is not a two-message scheme");
}

// Sender messages of one commit stage against a deterministic receiver.
std::vector<std::uint64_t> sender_view(const CommitmentScheme& s, const std::vector<RoundSpec>& spec,
                                       const ReceiverStrategy& r_star, std::uint64_t b, std::uint64_t r) {
  std::vector<Message> so_far;
  std::vector<std::uint64_t> view;
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const int round = static_cast<int>(j);
    Message m{spec[j].speaker, 0, spec[j].bits};
    if (spec[j].speaker == Party::receiver) {
      m.payload = r_star.next(round, so_far) & low_mask(m.bits);
    } else {
      m.payload = s.sender_message(round, so_far, b, r);
      view.push_back(m.payload);
    }
    so_far.push_back(m);
  }
  return view;
}

struct ClassStats {
  Rational weight;  // Pr[c]
  Rational delta;   // Delta(B_c, B)
  Rational same;    // sum_b B_c(b)^2
};

std::vector<ClassStats> class_stats(const CommitmentScheme& s, const hashfam::HashFunction& h) {
  const int k = s.sender_coin_bits();
  const int l = s.plaintext_bits();
  if (h.n() != l + k) throw DomainMismatch("hash function does not match the scheme's input length");
  const Rational uniform_b = pow2_inverse(l);
  std::vector<ClassStats> out;
  out.reserve(h.class_count());
  for (std::size_t c = 0; c < h.class_count(); ++c) {
    std::map<std::uint64_t, std::uint64_t> counts;
    const auto members = h.class_members(c);
    for (std::uint32_t x : members) ++counts[x >> k];
    const std::uint64_t size = members.size();
    ClassStats st{ratio(size, h.input_space()), 0, 0};
    for (const auto& [b, cnt] : counts) {
      const Rational p = ratio(cnt, size);
      st.same += p * p;
      if (p > uniform_b) st.delta += p - uniform_b;
    }
    out.push_back(std::move(st));
  }
  return out;
}

}  // namespace

ReceiverStrategy fixed_receiver(std::uint64_t message) {
  return {"fixed-" + hex_word(message, 64),
          [message](int, std::span<const Message>) { return message; }};
}

HidingResult hiding_distance(const CommitmentScheme& s, const ReceiverStrategy& r_star) {
  const int l = s.plaintext_bits();
  const int k = s.sender_coin_bits();
  if (l + k > kMaxEnumBits) throw CapExceeded("hiding enumeration over more than 2^20 sender inputs");
  const std::vector<RoundSpec> spec = s.rounds();
  std::vector<std::map<std::vector<std::uint64_t>, std::uint64_t>> views(pow2(l));
  for (std::uint64_t b = 0; b < pow2(l); ++b) {
    for (std::uint64_t r = 0; r < pow2(k); ++r) ++views[b][sender_view(s, spec, r_star, b, r)];
  }
  HidingResult best{Rational(0), 0, pow2(l) > 1 ? 1u : 0u};
  for (std::uint64_t b0 = 0; b0 < pow2(l); ++b0) {
    for (std::uint64_t b1 = b0 + 1; b1 < pow2(l); ++b1) {
      std::uint64_t diff = 0;
      for (const auto& [v, c0] : views[b0]) {
        auto it = views[b1].find(v);
        const std::uint64_t c1 = it == views[b1].end() ? 0 : it->second;
        if (c0 > c1) diff += c0 - c1;
      }
      const Rational d = ratio(diff, pow2(k));
      if (d > best.epsilon) best = {d, b0, b1};
    }
  }
  return best;
}

HidingResult hiding_distance_max(const CommitmentScheme& s, const std::vector<ReceiverStrategy>& r_stars) {
  HidingResult best;
  bool first = true;
  for (const ReceiverStrategy& r : r_stars) {
    HidingResult h = hiding_distance(s, r);
    if (first || h.epsilon > best.epsilon) best = h;
    first = false;
  }
  return best;
}

SenderStrategy honest_sender_strategy(const CommitmentScheme& s) {
  require_two_message(s);
  const int k = s.sender_coin_bits();
  return {"honest", pow2(s.plaintext_bits() + k), [&s, k](const Message& rm, std::uint64_t tape) {
            const std::uint64_t b = tape >> k;
            const std::uint64_t r = tape & low_mask(k);
            const std::vector<Message> first{rm};
            Transcript com{{rm, Message{Party::sender, s.sender_message(1, first, b, r), s.rounds()[1].bits}}, false, {}};
            Decommitment d{b, r};
            return std::optional<Equivocation>(Equivocation{com, d, d});
          }};
}

SenderStrategy brute_force_equivocator(const CommitmentScheme& s) {
  require_two_message(s);
  const int l = s.plaintext_bits();
  const int k = s.sender_coin_bits();
  if (l + k > kMaxEnumBits) throw CapExceeded("equivocator search over more than 2^20 sender inputs");
  const int out_bits = s.rounds()[1].bits;
  // Output tables per receiver message, shared across tapes.
  struct Cache {
    std::mutex mu;
    std::unordered_map<std::uint64_t, std::shared_ptr<const std::vector<std::uint64_t>>> tables;
  };
  auto cache = std::make_shared<Cache>();
  auto table_for = [&s, l, k, cache](const Message& rm) {
    std::lock_guard<std::mutex> lock(cache->mu);
    auto& slot = cache->tables[rm.payload];
    if (!slot) {
      auto t = std::make_shared<std::vector<std::uint64_t>>(pow2(l + k));
      const std::vector<Message> first{rm};
      for (std::uint64_t x = 0; x < t->size(); ++x) (*t)[x] = s.sender_message(1, first, x >> k, x & low_mask(k));
      slot = t;
    }
    return slot;
  };
  return {"brute-force", pow2(l + k),
          [k, out_bits, table_for](const Message& rm, std::uint64_t tape) -> std::optional<Equivocation> {
            const auto table = table_for(rm);
            const std::uint64_t y = (*table)[tape];
            const std::uint64_t b = tape >> k;
            for (std::uint64_t x = 0; x < table->size(); ++x) {
              if ((*table)[x] != y || (x >> k) == b) continue;
              Transcript com{{rm, Message{Party::sender, y, out_bits}}, false, {}};
              return Equivocation{com, {b, tape & low_mask(k)}, {x >> k, x & low_mask(k)}};
            }
            return std::nullopt;
          }};
}

BindingResult binding_break_probability(const CommitmentScheme& s, const SenderStrategy& s_star,
                                        const std::vector<std::uint64_t>& receiver_coins,
                                        std::size_t max_witnesses) {
  require_two_message(s);
  if (receiver_coins.empty()) throw ConfigError("binding game needs at least one receiver seed");
  const RoundSpec first = s.rounds()[0];
  std::uint64_t wins = 0;
  BindingResult out;
  for (std::uint64_t c : receiver_coins) {
    const Message rm{Party::receiver, s.receiver_message(0, {}, c) & low_mask(first.bits), first.bits};
    for (std::uint64_t tape = 0; tape < s_star.tape_space; ++tape) {
      std::optional<Equivocation> e = s_star.run(rm, tape);
      if (!e || e->com.messages.empty() || !(e->com.messages[0] == rm)) continue;
      const auto v0 = s.verify(e->com, e->decom);
      const auto v1 = s.verify(e->com, e->decom_prime);
      if (!v0 || !v1 || *v0 == *v1) continue;
      ++wins;
      if (out.witnesses.size() < max_witnesses) out.witnesses.push_back(std::move(*e));
    }
  }
  out.break_prob = Rational(wins) / (Rational(receiver_coins.size()) * Rational(s_star.tape_space));
  out.break_prob.canonicalize();
  return out;
}

hashfam::HashFamily scheme_to_hash_family(const CommitmentScheme& s, const std::vector<std::uint64_t>& receiver_coins) {
  require_two_message(s);
  const int l = s.plaintext_bits();
  const int k = s.sender_coin_bits();
  const int n = l + k;
  const std::vector<RoundSpec> spec = s.rounds();
  const int m = spec[1].bits;
  if (n > kMaxEnumBits || m > 32) throw CapExceeded("scheme too large to tabulate as a hash function");
  std::vector<hashfam::HashFunction> keys;
  keys.reserve(receiver_coins.size());
  for (std::uint64_t c : receiver_coins) {
    const Message rm{Party::receiver, s.receiver_message(0, {}, c) & low_mask(spec[0].bits), spec[0].bits};
    const std::vector<Message> first{rm};
    std::vector<std::uint32_t> table(pow2(n));
    for (std::uint64_t x = 0; x < table.size(); ++x) {
      table[x] = static_cast<std::uint32_t>(s.sender_message(1, first, x >> k, x & low_mask(k)));
    }
    keys.emplace_back(n, m, std::move(table), hex_word(rm.payload, 64), 64);
  }
  return hashfam::HashFamily(s.name(), n, m, 64, std::move(keys));
}

std::vector<std::uint64_t> sample_receiver_coins(std::uint64_t seed, std::size_t count) {
  std::vector<std::uint64_t> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = derive_seed(seed, {0x7265637672ULL, i});
  return out;
}

Rational string_variant_rate(const CommitmentScheme& s, const hashfam::HashFunction& h) {
  Rational same = 0;
  for (const ClassStats& st : class_stats(s, h)) same += st.weight * st.same;
  return same;
}

EquivocationReport col_equivocation_rate(const CommitmentScheme& s, const hashfam::HashFunction& h) {
  require_two_message(s);
  const int k = s.sender_coin_bits();
  const int l = s.plaintext_bits();
  const std::vector<ClassStats> stats = class_stats(s, h);
  EquivocationReport r;
  for (const ClassStats& st : stats) {
    r.same_rate += st.weight * st.same;
    r.eps_joint += st.weight * st.delta;
  }
  r.rate = 1 - r.same_rate;

  const auto col = hashfam::col_distribution<Rational>(h);
  for (const auto& [code, w] : col.pairs().support()) {
    const auto [x1, x2] = col.split(code);
    if ((x1 >> k) != (x2 >> k)) r.rate_via_col += w;
  }
  if (r.rate_via_col != r.rate) throw InvariantViolation("equivocation rate routes disagree");

  const std::uint64_t key = parse_hex_word(h.key());
  r.epsilon = hiding_distance(s, fixed_receiver(key)).epsilon;

  for (const ClassStats& st : stats) {
    const bool heavy = r.epsilon == 0 ? st.delta > 0 : geq_sqrt(st.delta, r.epsilon);
    if (heavy) r.markov_mass += st.weight;
  }
  r.markov_holds = r.epsilon == 0 ? r.markov_mass == 0 : leq_sqrt(r.markov_mass, r.epsilon);

  const Rational half(1, 2);
  r.rate_bound_holds = leq_sqrt((half - r.rate) / 2, r.epsilon);
  r.string_bound_holds = leq_sqrt((r.same_rate - pow2_inverse(l)) / 2, r.epsilon);

  const RoundSpec first = s.rounds()[0];
  const Message rm{Party::receiver, key & low_mask(first.bits), first.bits};
  r.openings_valid = true;
  for (std::uint64_t x = 0; x < h.input_space() && r.openings_valid; ++x) {
    Transcript com{{rm, Message{Party::sender, h(x), h.m()}}, false, {}};
    const auto v = s.verify(com, {x >> k, x & low_mask(k)});
    r.openings_valid = v && *v == (x >> k);
  }

  const double root = std::sqrt(probkit::to_double(r.epsilon));
  r.bound = 0.5 - 2 * root;
  r.string_bound = std::ldexp(1.0, -l) + 2 * root;
  return r;
}

void write_rate_csv(std::ostream& out, const std::vector<RateRow>& rows) {
  CsvWriter w(out, {"scheme", "h_index", "epsilon", "rate", "bound"});
  for (const RateRow& r : rows) {
    w.row({r.scheme, std::to_string(r.h_index), format_real(r.epsilon), format_real(r.rate), format_real(r.bound)});
  }
}

}  // namespace dcrhlab::commitments
