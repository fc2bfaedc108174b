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

#include "dcrhlab/acceptance/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <ostream>
#include <sstream>
#include <tuple>

#include "dcrhlab/commitments/games.hpp"
#include "dcrhlab/common/csv.hpp"
#include "dcrhlab/common/error.hpp"
#include "dcrhlab/common/rng.hpp"
#include "dcrhlab/iegen/entropy.hpp"
#include "dcrhlab/probkit/measures.hpp"
#include "dcrhlab/szkcommit/analysis.hpp"
#include "dcrhlab/szkcommit/protocol.hpp"

namespace dcrhlab::acceptance {
namespace {

using probkit::FloatDist;
using probkit::Rational;

constexpr double kGapTolerance = 1e-6;
constexpr double kTightTolerance = 1e-9;
constexpr int kProbkitTrials = 10000;

FloatDist random_dist(Rng& rng, std::uint64_t size, double floor = 0) {
  std::vector<double> w(size);
  double total = 0;
  for (auto& v : w) {
    v = floor > 0 ? floor + rng.unit() : (rng.below(4) == 0 ? 0.0 : rng.unit());
    total += v;
  }
  if (total == 0) {
    w[0] = 1;
    total = 1;
  }
  std::vector<FloatDist::Entry> e;
  for (std::uint64_t i = 0; i < size; ++i) e.emplace_back(i, w[i] / total);
  return FloatDist::from_entries(size, std::move(e));
}

CriterionResult make(int id, std::string name) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  return r;
}

// Runs body, turning any library error into a failed criterion.
CriterionResult guarded(int id, std::string name, const std::function<void(CriterionResult&)>& body) {
  CriterionResult r = make(id, std::move(name));
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  return r;
}

std::string ratio_text(const Rational& q) { return q.get_str(); }

}  // namespace

std::vector<dcrh2ie::GapReport> gap_sweep(const std::vector<hashfam::FamilyKind>& families,
                                          const std::vector<dcrh2ie::GeneratorKind>& generators, int n_lo, int n_hi,
                                          std::uint64_t seed, probkit::Arithmetic arithmetic) {
  auto sweep_family = [&](hashfam::FamilyKind kind) {
    std::vector<dcrh2ie::GapReport> part;
    for (int n = n_lo; n <= n_hi; ++n) {
      const auto family = std::make_shared<const hashfam::HashFamily>(
          hashfam::make_family({.kind = kind, .n = n, .seed = seed}));
      for (dcrh2ie::GeneratorKind g : generators) {
        try {
          part.push_back(dcrh2ie::gap_bound_check(dcrh2ie::make_generator(g, family), family, arithmetic));
        } catch (const Error& e) {
          dcrh2ie::GapReport bad;
          bad.family = std::string(hashfam::family_name(kind));
          bad.generator = std::string(dcrh2ie::generator_name(g));
          bad.n = n;
          bad.violations.push_back(e.what());
          part.push_back(std::move(bad));
        }
      }
    }
    return part;
  };
  std::vector<std::future<std::vector<dcrh2ie::GapReport>>> parts;
  for (hashfam::FamilyKind kind : families) parts.push_back(std::async(std::launch::async, sweep_family, kind));
  std::vector<dcrh2ie::GapReport> rows;
  for (auto& f : parts) {
    for (auto& r : f.get()) rows.push_back(std::move(r));
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return std::tie(a.family, a.generator, a.n) < std::tie(b.family, b.generator, b.n);
  });
  return rows;
}

CriterionResult real_entropy_criterion(const Options& o) {
  return guarded(1, "real-entropy-equals-n", [&](CriterionResult& r) {
    int cases = 0;
    int bad = 0;
    for (hashfam::FamilyKind kind : hashfam::toy_families()) {
      for (int n = 2; n <= 10; ++n) {
        const auto family = std::make_shared<const hashfam::HashFamily>(
            hashfam::make_family({.kind = kind, .n = n, .seed = o.seed}));
        const auto g = dcrh2ie::build_two_block_generator(family);
        ++cases;
        bad += !(iegen::real_entropy<Rational>(g).conditional == probkit::LogLinear(Rational(n)));
      }
    }
    r.passed = bad == 0;
    r.detail = std::to_string(cases) + " family/n cases, " + std::to_string(bad) + " mismatches";
  });
}

CriterionResult gap_bound_criterion(const Options&, const std::vector<dcrh2ie::GapReport>& rows) {
  return guarded(2, "gap-bound-sweep", [&](CriterionResult& r) {
    int bad = 0;
    std::string first;
    for (const auto& g : rows) {
      const double two_root = 2 * std::sqrt(g.gap);
      const bool holds = g.ok() && g.measured_distance <= g.bound + kGapTolerance &&
                         g.bound <= two_root + kGapTolerance && g.kl1 <= g.gap + kGapTolerance &&
                         g.kl2 <= g.gap + kGapTolerance;
      if (!holds) {
        ++bad;
        if (first.empty()) {
          first = g.family + "/" + g.generator + "/n=" + std::to_string(g.n);
          if (!g.violations.empty()) first += ": " + g.violations.front();
        }
      }
    }
    r.passed = bad == 0 && !rows.empty();
    r.detail = std::to_string(rows.size()) + " rows, " + std::to_string(bad) + " violating";
    if (!first.empty()) r.detail += " (first " + first + ")";
  });
}

CriterionResult tightness_criterion(const Options&, const std::vector<dcrh2ie::GapReport>& rows) {
  return guarded(3, "ideal-generator-tight", [&](CriterionResult& r) {
    int seen = 0;
    int bad = 0;
    for (const auto& g : rows) {
      if (g.generator != dcrh2ie::generator_name(dcrh2ie::GeneratorKind::ideal)) continue;
      ++seen;
      bad += !(g.gap_exactly_zero && g.distance_exactly_zero && std::abs(g.gap) <= kTightTolerance &&
               std::abs(g.measured_distance) <= kTightTolerance);
    }
    r.passed = seen > 0 && bad == 0;
    r.detail = std::to_string(seen) + " ideal rows, " + std::to_string(bad) + " with nonzero gap or distance";
  });
}

CriterionResult probkit_criterion(const Options& o) {
  return guarded(4, "probkit-identities", [&](CriterionResult& r) {
    Rng rng(derive_seed(o.seed, {4}));
    int chain = 0, pinsker = 0, jensen = 0, kl = 0, metric = 0;
    for (int t = 0; t < kProbkitTrials; ++t) {
      probkit::JointDist<double> pj(4, 4, random_dist(rng, 16));
      probkit::JointDist<double> qj(4, 4, random_dist(rng, 16, 0.05));
      const auto c = probkit::kl_chain_rule_check(pj, qj);
      chain += !(std::abs(c.lhs - c.rhs) <= 1e-9);

      const std::uint64_t size = 1 + rng.below(16);
      const FloatDist p = random_dist(rng, size);
      const FloatDist q = random_dist(rng, size);
      const FloatDist s = random_dist(rng, size);
      pinsker += !probkit::pinsker_check(p, q).holds();
      kl += !(probkit::kl_divergence(p, q) >= -1e-12 && probkit::kl_divergence(p, p) <= 1e-12);

      const double pq = probkit::stat_distance(p, q);
      metric += !(pq >= 0 && pq <= 1 + 1e-12 && pq == probkit::stat_distance(q, p) &&
                  probkit::stat_distance(p, p) == 0 &&
                  pq <= probkit::stat_distance(p, s) + probkit::stat_distance(s, q) + 1e-12);

      std::vector<double> v(1 + rng.below(20)), w(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = 1e-3 + 100 * rng.unit();
        w[i] = 1e-3 + rng.unit();
      }
      jensen += !probkit::jensen_log2_check(v, w).holds();
    }
    r.passed = chain + pinsker + jensen + kl + metric == 0;
    std::ostringstream d;
    d << kProbkitTrials << " trials each; failures chain=" << chain << " pinsker=" << pinsker << " jensen=" << jensen
      << " kl=" << kl << " metric=" << metric;
    r.detail = d.str();
  });
}

CriterionResult commitment_criterion(const Options& o) {
  return guarded(5, "commitment-reduction", [&](CriterionResult& r) {
    using commitments::FunctionCommitment;
    using commitments::FunctionKind;
    const auto coins = commitments::sample_receiver_coins(o.seed, 100);
    int rate_bad = 0, markov_bad = 0, open_bad = 0, string_bad = 0;
    const FunctionCommitment bit(FunctionKind::random, 1, 6, 3);
    const auto fam = commitments::scheme_to_hash_family(bit, coins);
    for (const auto& h : fam.keys()) {
      const auto rep = commitments::col_equivocation_rate(bit, h);
      rate_bad += !rep.rate_bound_holds;
      markov_bad += !rep.markov_holds;
      open_bad += !rep.openings_valid;
    }
    const FunctionCommitment str(FunctionKind::random, 3, 6, 3);
    const auto fam3 = commitments::scheme_to_hash_family(str, coins);
    for (const auto& h : fam3.keys()) string_bad += !commitments::col_equivocation_rate(str, h).string_bound_holds;
    r.passed = rate_bad + markov_bad + open_bad + string_bad == 0;
    std::ostringstream d;
    d << coins.size() << " keys; failures rate=" << rate_bad << " markov=" << markov_bad << " openings=" << open_bad
      << " string=" << string_bad;
    r.detail = d.str();
  });
}

CriterionResult completeness_criterion(const Options& o) {
  return guarded(6, "protocol-completeness", [&](CriterionResult& r) {
    szkcommit::SzkParams q;
    q.seed = o.seed;
    const szkcommit::PromiseProblem p(q);
    const szkcommit::Sbc sbc(szkcommit::SbcKind::ideal, q.coin_bits);
    const auto c = szkcommit::completeness_sweep(p, sbc, o.seed);
    const auto t = szkcommit::tamper_sweep(p, sbc, o.seed);
    r.passed = c.ok() && t.ok();
    std::ostringstream d;
    d << c.accepted << "/" << c.runs << " runs accepted, " << c.idc_accepted << "/" << c.idc_checks
      << " IDC openings; tampered NO slots accepted " << t.accepted_on_no << "/" << t.flips_on_no;
    r.detail = d.str();
  });
}

CriterionResult binding_criterion(const Options& o) {
  return guarded(7, "binding-reduction", [&](CriterionResult& r) {
    szkcommit::SzkParams q;
    q.seed = o.seed;
    const szkcommit::PromiseProblem p(q);
    const szkcommit::Sbc sbc(szkcommit::SbcKind::ideal, q.coin_bits);
    const auto h = szkcommit::hybrid_sweep(p, sbc, szkcommit::equivocating_sender(p, sbc));
    bool all_equal = true;
    for (const Rational& e : h.pr_e) all_equal = all_equal && e == h.pr_e[0];
    r.passed = all_equal && h.ok();
    std::ostringstream d;
    d << "Pr[E] H0..H4 =";
    for (const Rational& e : h.pr_e) d << ' ' << ratio_text(e);
    d << "; eps*/(2n) = " << ratio_text(h.h4_bound) << "; decider " << ratio_text(h.decider_success)
      << " >= " << ratio_text(h.decider_bound);
    r.detail = d.str();
  });
}

CriterionResult hiding_criterion(const Options& o) {
  return guarded(8, "hiding-analysis", [&](CriterionResult& r) {
    int runs = 0;
    int bad = 0;
    std::ostringstream d;
    for (int n = 1; n <= 3; ++n) {
      szkcommit::SzkParams q;
      q.n = n;
      q.seed = o.seed;
      const szkcommit::PromiseProblem p(q);
      const szkcommit::Sbc sbc(szkcommit::SbcKind::ideal, q.coin_bits);
      const szkcommit::Instance& no = p.no_pool().front();
      for (const auto& rs : {szkcommit::honest_receiver(p, o.seed), szkcommit::column_receiver(p, o.seed, 1, no),
                             szkcommit::planted_receiver(p, o.seed, no)}) {
        const auto h = szkcommit::hiding_experiment(p, sbc, rs);
        ++runs;
        bad += !h.ok();
        if (rs.name == "honest") d << "n=" << n << " inadmissible " << ratio_text(h.inadmissible_prob) << " <= "
                                   << ratio_text(h.inadmissible_bound) << "; ";
      }
    }
    r.passed = bad == 0;
    d << runs << " receiver runs, " << bad << " failing";
    r.detail = d.str();
  });
}

std::vector<CriterionResult> run_all(const Options& o) {
  std::vector<CriterionResult> out;
  out.push_back(real_entropy_criterion(o));
  std::vector<dcrh2ie::GeneratorKind> gens = dcrh2ie::consistent_generators();
  if (o.inject_fault) gens.push_back(dcrh2ie::GeneratorKind::liar);
  const auto rows = gap_sweep(hashfam::toy_families(), gens, 1, 8, o.seed, probkit::Arithmetic::exact);
  out.push_back(gap_bound_criterion(o, rows));
  out.push_back(tightness_criterion(o, rows));
  out.push_back(probkit_criterion(o));
  out.push_back(commitment_criterion(o));
  out.push_back(completeness_criterion(o));
  out.push_back(binding_criterion(o));
  out.push_back(hiding_criterion(o));
  return out;
}

std::string format_line(const CriterionResult& r) {
  return "criterion " + std::to_string(r.id) + " " + (r.passed ? "PASS" : "FAIL") + " " + r.name + ": " + r.detail;
}

void write_report(std::ostream& out, const std::vector<CriterionResult>& results) {
  for (const auto& r : results) out << format_line(r) << '\n';
}

}  // namespace dcrhlab::acceptance
