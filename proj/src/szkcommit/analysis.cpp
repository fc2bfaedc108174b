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

#include "dcrhlab/szkcommit/analysis.hpp"

#include <future>
#include <unordered_map>

#include "dcrhlab/common/bits.hpp"
#include "dcrhlab/common/error.hpp"
#include "dcrhlab/common/rng.hpp"

namespace dcrhlab::szkcommit {
namespace {

constexpr std::uint64_t kMaxRuns = std::uint64_t{1} << 26;

std::vector<std::uint64_t> unpack(std::uint64_t v, int count, int bits) {
  std::vector<std::uint64_t> out(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) out[static_cast<std::size_t>(j)] = (v >> (j * bits)) & low_mask(bits);
  return out;
}

Rational pow_rational(const Rational& base, int e) {
  Rational out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

std::vector<std::uint64_t> receiver_rho(const PromiseProblem& p, std::uint64_t seed) {
  Rng rng(derive_seed(seed, {0x52484f}));
  std::vector<std::uint64_t> rho;
  for (int j = 0; j < 2 * p.params().n; ++j) rho.push_back(rng.bits(p.params().coin_bits));
  return rho;
}

// Shares, coins and plaintext an honest sender derives from its tape.
Opening honest_opening(const PromiseProblem& p, std::uint64_t tape) {
  const int slots = 2 * p.params().n;
  Rng rng(derive_seed(tape, {0x4f50454e}));
  Opening o;
  o.plaintext = parity(tape);
  o.shares = shares_for(slots, o.plaintext, rng.bits(slots - 1));
  for (int j = 0; j < slots; ++j) o.coins.push_back(rng.bits(p.params().k));
  return o;
}

std::vector<std::uint64_t> commit_all(std::span<const Instance* const> instances, const Opening& o) {
  std::vector<std::uint64_t> c(instances.size());
  for (std::size_t j = 0; j < instances.size(); ++j) c[j] = instances[j]->commit(o.shares[j], o.coins[j]);
  return c;
}

bool equivocates(std::span<const Instance* const> instances, const SenderPlay& play) {
  return play.second && play.first.plaintext != play.second->plaintext &&
         opening_valid(instances, play.commitments, play.first) &&
         opening_valid(instances, play.commitments, *play.second);
}

struct Outcome {
  bool verdict = false;
  bool e = false;
  bool witness_valid = false;
};

// One run of the binding experiment. Hybrid 0 plants `planted` (or Pi(u)) at
// j*; hybrids 1-3 sample it from sigma_{j*} xor u; hybrids 2-3 commit to u at
// j*; hybrids 0-2 prove with column 1 xor b*; hybrid 4 is a plain execution.
Outcome run_world(const PromiseProblem& p, const Sbc& sbc, const CheatingSender& s, int hybrid,
                  const Instance* planted, const std::vector<std::uint64_t>& rho, std::uint64_t tape, std::uint64_t u,
                  std::size_t jstar) {
  const int n = p.params().n;
  const std::size_t slots = rho.size();
  const std::vector<std::uint64_t> sigma = s.sigma(tape);
  std::vector<std::uint64_t> bound = rho;
  if (hybrid == 2 || hybrid == 3) bound[jstar] = u;
  std::vector<std::uint64_t> sbc_values(slots);
  std::vector<const Instance*> instances(slots);
  for (std::size_t j = 0; j < slots; ++j) {
    sbc_values[j] = sbc.commit(bound[j], 0);
    instances[j] = &p.sample(rho[j] ^ sigma[j]);
  }
  if (hybrid == 0) {
    instances[jstar] = planted ? planted : &p.sample(u);
  } else if (hybrid <= 3) {
    instances[jstar] = &p.sample(sigma[jstar] ^ u);
  }
  const int bstar = static_cast<int>(jstar % 2);
  const int column = hybrid <= 2 ? 1 - bstar : 0;
  std::vector<std::uint64_t> witness;
  for (int i = 0; i < n; ++i) witness.push_back(bound[slot(i, column)]);
  const WiOutcome wi = ideal_wi(p, bound, sigma, instances, column, witness);
  Outcome out;
  out.verdict = wi.verdict;
  out.witness_valid = wi.witness_valid;
  if (!wi.verdict) return out;
  const SenderPlay play = s.play({sbc_values, instances, true}, tape);
  out.e = equivocates(instances, play) && play.first.shares[jstar] != play.second->shares[jstar];
  return out;
}

std::uint64_t world_runs(const PromiseProblem& p, const CheatingSender& s) {
  const SzkParams& q = p.params();
  const int slots = 2 * q.n;
  if (slots * q.coin_bits + q.coin_bits > 30) throw CapExceeded("binding experiment too large");
  const std::uint64_t base = pow2(slots * q.coin_bits) * pow2(q.coin_bits) * static_cast<std::uint64_t>(slots);
  if (s.tape_space == 0 || base > kMaxRuns / s.tape_space) throw CapExceeded("binding experiment too large");
  return base * s.tape_space;
}

struct Tally {
  std::uint64_t runs = 0;
  std::uint64_t e = 0;
  std::uint64_t e_yes = 0;
  std::uint64_t e_no = 0;
  std::uint64_t x_yes = 0;  // hybrid 0 only
  std::uint64_t witness_invalid = 0;
};

Tally tally_hybrid(const PromiseProblem& p, const Sbc& sbc, const CheatingSender& s, int hybrid) {
  const SzkParams& q = p.params();
  const int slots = 2 * q.n;
  Tally t;
  for (std::uint64_t ri = 0; ri < pow2(slots * q.coin_bits); ++ri) {
    const std::vector<std::uint64_t> rho = unpack(ri, slots, q.coin_bits);
    for (std::uint64_t tape = 0; tape < s.tape_space; ++tape) {
      for (std::uint64_t u = 0; u < p.coin_space(); ++u) {
        for (std::size_t j = 0; j < static_cast<std::size_t>(slots); ++j) {
          const Outcome o = run_world(p, sbc, s, hybrid, nullptr, rho, tape, u, j);
          ++t.runs;
          t.witness_invalid += !o.witness_valid;
          if (hybrid == 0) {
            const bool yes = p.classify(p.sample(u)) == Classification::yes;
            t.x_yes += yes;
            if (o.e) (yes ? t.e_yes : t.e_no)++;
          }
          t.e += o.e;
        }
      }
    }
  }
  return t;
}

Rational standard_break_probability(const PromiseProblem& p, const Sbc& sbc, const CheatingSender& s) {
  const SzkParams& q = p.params();
  const int slots = 2 * q.n;
  std::uint64_t wins = 0;
  std::uint64_t runs = 0;
  for (std::uint64_t ri = 0; ri < pow2(slots * q.coin_bits); ++ri) {
    const std::vector<std::uint64_t> rho = unpack(ri, slots, q.coin_bits);
    for (std::uint64_t tape = 0; tape < s.tape_space; ++tape) {
      const std::vector<std::uint64_t> sigma = s.sigma(tape);
      std::vector<std::uint64_t> sbc_values(rho.size());
      std::vector<const Instance*> instances(rho.size());
      for (std::size_t j = 0; j < rho.size(); ++j) {
        sbc_values[j] = sbc.commit(rho[j], 0);
        instances[j] = &p.sample(rho[j] ^ sigma[j]);
      }
      ++runs;
      if (!wi_statement(p, rho, sigma, instances)) continue;
      wins += equivocates(instances, s.play({sbc_values, instances, true}, tape));
    }
  }
  return probkit::ratio(wins, runs);
}

}  // namespace

CheatingReceiver honest_receiver(const PromiseProblem& p, std::uint64_t seed) {
  const std::vector<std::uint64_t> rho = receiver_rho(p, seed);
  return {"honest", rho, [&p, rho](std::span<const std::uint64_t> sigma) {
            std::vector<const Instance*> xs;
            for (std::size_t j = 0; j < rho.size(); ++j) xs.push_back(&p.sample(rho[j] ^ sigma[j]));
            return xs;
          }};
}

CheatingReceiver column_receiver(const PromiseProblem& p, std::uint64_t seed, int column, const Instance& x) {
  CheatingReceiver honest = honest_receiver(p, seed);
  auto inner = honest.instances;
  honest.name = "column-" + std::to_string(column);
  honest.instances = [inner, column, &x](std::span<const std::uint64_t> sigma) {
    std::vector<const Instance*> xs = inner(sigma);
    for (std::size_t j = static_cast<std::size_t>(column); j < xs.size(); j += 2) xs[j] = &x;
    return xs;
  };
  return honest;
}

CheatingReceiver planted_receiver(const PromiseProblem& p, std::uint64_t seed, const Instance& x) {
  const std::vector<std::uint64_t> rho = receiver_rho(p, seed);
  return {"planted", rho, [&x, slots = rho.size()](std::span<const std::uint64_t>) {
            return std::vector<const Instance*>(slots, &x);
          }};
}

Preamble run_preamble(const PromiseProblem& p, const Sbc& sbc, const CheatingReceiver& r_star,
                      std::span<const std::uint64_t> sigma) {
  Preamble v;
  v.bound = r_star.rho;
  for (std::uint64_t rho : v.bound) v.sbc.push_back(sbc.commit(rho, 0));
  v.sigma.assign(sigma.begin(), sigma.end());
  v.instances = r_star.instances(sigma);
  if (v.instances.size() != v.bound.size()) throw ProtocolError("receiver sent the wrong number of instances");
  v.wi_accepted = wi_statement(p, v.bound, v.sigma, v.instances);
  return v;
}

bool admissible_preamble(const PromiseProblem& p, const Preamble& v) {
  if (!v.wi_accepted) return true;
  for (const Instance* x : v.instances) {
    if (p.classify(*x) == Classification::yes) return true;
  }
  return false;
}

Rational conditional_view_distance(const Preamble& v) {
  if (!v.wi_accepted) return 0;
  Rational d = 1;
  for (const Instance* x : v.instances) d *= x->epsilon();
  return d;
}

Rational conditional_view_distance_bruteforce(const Preamble& v, int k) {
  if (!v.wi_accepted) return 0;
  const int slots = static_cast<int>(v.instances.size());
  const int m = v.instances.front()->output_bits();
  if (slots * m > 64 || slots - 1 + slots * k > 22) throw CapExceeded("brute-force view enumeration too large");
  std::unordered_map<std::uint64_t, std::int64_t> diff;
  for (std::uint64_t pt = 0; pt < 2; ++pt) {
    for (std::uint64_t sh = 0; sh < pow2(slots - 1); ++sh) {
      const std::vector<std::uint64_t> shares = shares_for(slots, pt, sh);
      for (std::uint64_t cv = 0; cv < pow2(slots * k); ++cv) {
        std::uint64_t view = 0;
        for (int j = 0; j < slots; ++j) {
          const std::size_t sj = static_cast<std::size_t>(j);
          view |= std::uint64_t{v.instances[sj]->commit(shares[sj], (cv >> (j * k)) & low_mask(k))} << (j * m);
        }
        diff[view] += pt == 0 ? 1 : -1;
      }
    }
  }
  std::uint64_t total = 0;
  for (const auto& [view, d] : diff) total += d > 0 ? static_cast<std::uint64_t>(d) : 0;
  return probkit::ratio(total, pow2(slots - 1 + slots * k));
}

HidingReport hiding_experiment(const PromiseProblem& p, const Sbc& sbc, const CheatingReceiver& r_star) {
  const SzkParams& q = p.params();
  const int slots = 2 * q.n;
  if (slots * q.coin_bits > 20) throw CapExceeded("hiding experiment over more than 2^20 coin-toss strings");
  HidingReport r;
  r.receiver = r_star.name;
  r.n = q.n;
  r.yes_rate = p.yes_rate();
  r.inadmissible_bound = 2 * pow_rational(1 - r.yes_rate, q.n);
  std::uint64_t inadmissible = 0;
  std::uint64_t rejected = 0;
  Rational total = 0;
  r.conditional_bound_holds = true;
  for (std::uint64_t s = 0; s < pow2(slots * q.coin_bits); ++s) {
    const std::vector<std::uint64_t> sigma = unpack(s, slots, q.coin_bits);
    const Preamble v = run_preamble(p, sbc, r_star, sigma);
    ++r.preambles;
    rejected += !v.wi_accepted;
    const Rational d = conditional_view_distance(v);
    total += d;
    if (!admissible_preamble(p, v)) {
      ++inadmissible;
      continue;
    }
    if (d > r.epsilon_given_admissible) r.epsilon_given_admissible = d;
    if (!v.wi_accepted) continue;
    Rational yes_eps = -1;
    for (const Instance* x : v.instances) {
      if (p.classify(*x) == Classification::yes && x->epsilon() > yes_eps) yes_eps = x->epsilon();
    }
    if (d > yes_eps) r.conditional_bound_holds = false;
    if (yes_eps > r.max_yes_epsilon) r.max_yes_epsilon = yes_eps;
  }
  r.inadmissible_prob = probkit::ratio(inadmissible, r.preambles);
  r.rejected_prob = probkit::ratio(rejected, r.preambles);
  r.total_distance = total / Rational(static_cast<long>(r.preambles));
  r.total_distance.canonicalize();
  r.admissible_bound_holds = r.inadmissible_prob <= r.inadmissible_bound;
  r.total_bound_holds = r.total_distance <= r.max_yes_epsilon + r.inadmissible_prob;
  return r;
}

bool opening_valid(std::span<const Instance* const> instances, std::span<const std::uint64_t> commitments,
                   const Opening& o) {
  if (o.shares.size() != instances.size() || o.coins.size() != instances.size() ||
      commitments.size() != instances.size()) {
    return false;
  }
  std::uint64_t x = 0;
  for (std::size_t j = 0; j < instances.size(); ++j) {
    if (!instances[j]->verify(commitments[j], o.shares[j], o.coins[j])) return false;
    x ^= o.shares[j];
  }
  return x == o.plaintext;
}

CheatingSender honest_sender(const PromiseProblem& p) {
  const int slots = 2 * p.params().n;
  const int bits = p.params().coin_bits;
  return {"honest", pow2(slots * bits), [slots, bits](std::uint64_t tape) { return unpack(tape, slots, bits); },
          [&p](const SenderView& view, std::uint64_t tape) {
            SenderPlay play;
            play.first = honest_opening(p, tape);
            play.commitments = commit_all(view.instances, play.first);
            return play;
          }};
}

CheatingSender equivocating_sender(const PromiseProblem& p, const Sbc& sbc, bool peek) {
  CheatingSender s = honest_sender(p);
  s.name = peek ? "equivocating-peek" : "equivocating";
  s.play = [&p, &sbc, peek, sigma_of = s.sigma](const SenderView& view, std::uint64_t tape) {
    SenderPlay play;
    play.first = honest_opening(p, tape);
    const std::vector<std::uint64_t> sigma = sigma_of(tape);
    for (std::size_t j = 0; j < view.instances.size(); ++j) {
      const auto& eq = view.instances[j]->equivocation();
      if (!eq) continue;
      if (peek) {
        const auto rho = sbc.extract(view.sbc[j]);
        if (rho && !(p.sample(*rho ^ sigma[j]) == *view.instances[j])) continue;
      }
      Opening& a = play.first;
      a.plaintext ^= a.shares[j];
      a.shares[j] = 0;
      a.coins[j] = eq->first;
      Opening b = a;
      b.shares[j] = 1;
      b.coins[j] = eq->second;
      b.plaintext ^= 1;
      play.second = std::move(b);
      break;
    }
    play.commitments = commit_all(view.instances, play.first);
    return play;
  };
  return s;
}

DeciderResult decider_from_breaker(const PromiseProblem& p, const Sbc& sbc, const CheatingSender& s_star,
                                   const Instance& x) {
  const SzkParams& q = p.params();
  const int slots = 2 * q.n;
  world_runs(p, s_star);
  std::uint64_t runs = 0;
  std::uint64_t e = 0;
  std::uint64_t valid = 0;
  for (std::uint64_t ri = 0; ri < pow2(slots * q.coin_bits); ++ri) {
    const std::vector<std::uint64_t> rho = unpack(ri, slots, q.coin_bits);
    for (std::uint64_t tape = 0; tape < s_star.tape_space; ++tape) {
      for (std::size_t j = 0; j < static_cast<std::size_t>(slots); ++j) {
        const Outcome o = run_world(p, sbc, s_star, 0, &x, rho, tape, 0, j);
        ++runs;
        e += o.e;
        valid += o.witness_valid;
      }
    }
  }
  DeciderResult r;
  r.pr_e = probkit::ratio(e, runs);
  r.pr_yes = probkit::ratio(2 * e + (runs - e), 2 * runs);
  r.witness_valid = probkit::ratio(valid, runs);
  return r;
}

HybridReport hybrid_sweep(const PromiseProblem& p, const Sbc& sbc, const CheatingSender& s_star) {
  HybridReport r;
  r.sender = s_star.name;
  r.n = p.params().n;
  r.runs_per_hybrid = world_runs(p, s_star);
  std::array<std::future<Tally>, 5> jobs;
  for (int h = 0; h < 5; ++h) {
    jobs[static_cast<std::size_t>(h)] =
        std::async(std::launch::async, [&p, &sbc, &s_star, h] { return tally_hybrid(p, sbc, s_star, h); });
  }
  r.epsilon_star = standard_break_probability(p, sbc, s_star);
  std::array<Tally, 5> t;
  std::uint64_t invalid = 0;
  for (std::size_t h = 0; h < 5; ++h) {
    t[h] = jobs[h].get();
    r.pr_e[h] = probkit::ratio(t[h].e, t[h].runs);
    invalid += t[h].witness_invalid;
  }
  r.witness_invalid = probkit::ratio(invalid, 5 * r.runs_per_hybrid);
  r.identical_01 = r.pr_e[0] == r.pr_e[1];
  r.identical_34 = r.pr_e[3] == r.pr_e[4];
  r.slack_12 = abs(r.pr_e[1] - r.pr_e[2]);
  r.slack_23 = abs(r.pr_e[2] - r.pr_e[3]);
  r.h4_bound = r.epsilon_star / (2 * r.n);
  r.h4_bound_holds = r.pr_e[4] >= r.h4_bound;
  const Tally& h0 = t[0];
  // D is right on E with a YES instance, and with probability 1/2 off E.
  r.decider_success = probkit::ratio(2 * h0.e_yes + (h0.runs - h0.e), 2 * h0.runs);
  r.decider_bound = (1 + r.pr_e[0]) / 2;
  r.e_and_no = probkit::ratio(h0.e_no, h0.runs);
  r.decider_holds = r.decider_success >= r.decider_bound;
  return r;
}

}  // namespace dcrhlab::szkcommit
