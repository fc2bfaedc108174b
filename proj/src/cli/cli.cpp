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

#include "dcrhlab/cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <memory>
#include <sstream>
#include <tuple>

#include "dcrhlab/acceptance/acceptance.hpp"
#include "dcrhlab/commitments/games.hpp"
#include "dcrhlab/common/caps.hpp"
#include "dcrhlab/common/csv.hpp"
#include "dcrhlab/common/error.hpp"
#include "dcrhlab/common/rng.hpp"
#include "dcrhlab/dcrh2ie/reduction.hpp"
#include "dcrhlab/probkit/measures.hpp"
#include "dcrhlab/szkcommit/analysis.hpp"
#include "dcrhlab/szkcommit/protocol.hpp"

namespace dcrhlab::cli {
namespace {

using Row = std::vector<std::string>;

std::string num(double v) { return format_real(v); }
std::string num(const probkit::Rational& q) { return q.get_str(); }
std::string flag(bool b) { return b ? "1" : "0"; }

std::vector<hashfam::FamilyKind> families_of(const ExperimentConfig& c) {
  if (c.family == "all") return hashfam::toy_families();
  return {hashfam::parse_family(c.family)};
}

std::vector<dcrh2ie::GeneratorKind> generators_of(const ExperimentConfig& c) {
  std::vector<dcrh2ie::GeneratorKind> out;
  if (c.generator == "all") {
    out = dcrh2ie::consistent_generators();
  } else {
    out.push_back(dcrh2ie::parse_generator(c.generator));
  }
  if (c.inject_fault) out.push_back(dcrh2ie::GeneratorKind::liar);
  return out;
}

std::filesystem::path output_path(const ExperimentConfig& c, const std::string& ext) {
  if (!c.out.empty()) return c.out;
  std::filesystem::path dir = ".";
  if (const char* env = std::getenv("DCRHLAB_OUT_DIR"); env != nullptr && *env != '\0') dir = env;
  return dir / (c.subcommand + ext);
}

bool is_count(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
}

// Integer columns compare numerically, everything else as text.
bool key_less(const std::string& a, const std::string& b) {
  if (is_count(a) && is_count(b) && a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// The single emitter: rows are sorted on their leading key columns, then written.
void emit_csv(const std::filesystem::path& path, const Row& header, std::vector<Row> rows, std::size_t key_columns) {
  std::stable_sort(rows.begin(), rows.end(), [key_columns](const Row& a, const Row& b) {
    return std::lexicographical_compare(a.begin(), a.begin() + key_columns, b.begin(), b.begin() + key_columns,
                                        key_less);
  });
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file " + path.string());
  CsvWriter w(f, header);
  for (const Row& r : rows) w.row(r);
}

int entropy_cmd(const ExperimentConfig& c, std::ostream& out) {
  Rng rng(derive_seed(c.seed, {0x656e74}));
  std::vector<Row> rows;
  int failures = 0;
  for (std::uint64_t t = 0; t < c.samples; ++t) {
    const int n = c.n.lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(c.n.hi - c.n.lo + 1)));
    const std::uint64_t size = std::uint64_t{1} << n;
    auto draw = [&](double floor) {
      std::vector<double> w(size);
      double total = 0;
      for (auto& v : w) total += v = floor + rng.unit();
      std::vector<probkit::FloatDist::Entry> e;
      for (std::uint64_t i = 0; i < size; ++i) e.emplace_back(i, w[i] / total);
      return probkit::FloatDist::from_entries(size, std::move(e));
    };
    const auto p = draw(0);
    const auto q = draw(0.05);
    const int half = n / 2;
    const probkit::JointDist<double> pj(std::uint64_t{1} << half, std::uint64_t{1} << (n - half), p);
    const probkit::JointDist<double> qj(std::uint64_t{1} << half, std::uint64_t{1} << (n - half), q);
    const auto chain = probkit::kl_chain_rule_check(pj, qj);
    const auto pin = probkit::pinsker_check(p, q);
    const double tv = probkit::stat_distance(p, q);
    const double kl = probkit::kl_divergence(p, q);
    const bool ok = std::abs(chain.lhs - chain.rhs) <= 1e-9 && pin.holds() && kl >= -1e-12;
    failures += !ok;
    rows.push_back({std::to_string(t), std::to_string(n), num(probkit::shannon_entropy(p)), num(kl), num(tv),
                    num(pin.bound), num(chain.lhs - chain.rhs), flag(ok)});
  }
  const auto path = output_path(c, ".csv");
  emit_csv(path, {"trial", "n", "entropy", "kl", "tv", "pinsker_bound", "chain_residual", "ok"}, std::move(rows), 0);
  out << "entropy: " << c.samples << " trials, " << failures << " failing -> " << path.string() << '\n';
  return failures == 0 ? 0 : 1;
}

int dcrh_game_cmd(const ExperimentConfig& c, std::ostream& out) {
  hashfam::GameOptions opt;
  opt.arithmetic = c.mode == Mode::exact ? probkit::Arithmetic::exact : probkit::Arithmetic::floating;
  opt.monte_carlo = c.mode == Mode::monte_carlo;
  opt.samples = c.samples;
  opt.seed = c.seed;
  std::vector<Row> rows;
  for (auto kind : families_of(c)) {
    for (int n = c.n.lo; n <= c.n.hi; ++n) {
      const auto family = std::make_shared<const hashfam::HashFamily>(
          hashfam::make_family({.kind = kind, .n = n, .seed = c.seed}));
      std::vector<hashfam::Adversary> adversaries{hashfam::col_adversary(*family), hashfam::diagonal_adversary(n)};
      for (auto g : generators_of(c)) {
        if (g == dcrh2ie::GeneratorKind::liar) continue;
        adversaries.push_back(dcrh2ie::rewinding_adversary(dcrh2ie::make_generator(g, family), family));
      }
      for (const auto& a : adversaries) {
        const auto r = hashfam::dcrh_distance(*family, a, opt);
        rows.push_back({r.family, r.adversary, std::to_string(n), r.monte_carlo ? "monte-carlo" : "exact",
                        num(r.distance), r.exact ? num(r.exact_distance) : "", num(r.ci_half_width),
                        std::to_string(r.samples)});
      }
    }
  }
  const auto path = output_path(c, ".csv");
  const std::size_t count = rows.size();
  emit_csv(path, {"family", "adversary", "n", "mode", "distance", "distance_exact", "ci_half_width", "samples"},
           std::move(rows), 3);
  out << "dcrh-game: " << count << " rows -> " << path.string() << '\n';
  return 0;
}

int gap_sweep_cmd(const ExperimentConfig& c, std::ostream& out) {
  const auto arithmetic = c.mode == Mode::exact ? probkit::Arithmetic::exact : probkit::Arithmetic::floating;
  const auto reports = acceptance::gap_sweep(families_of(c), generators_of(c), c.n.lo, c.n.hi, c.seed, arithmetic);
  std::vector<Row> rows;
  int bad = 0;
  for (const auto& g : reports) {
    const double two_root = 2 * std::sqrt(g.gap);
    const bool ok = g.ok() && g.measured_distance <= g.bound + 1e-6 && g.bound <= two_root + 1e-6 &&
                    g.kl1 <= g.gap + 1e-6 && g.kl2 <= g.gap + 1e-6;
    bad += !ok;
    std::string why;
    for (const auto& v : g.violations) why += (why.empty() ? "" : "; ") + v;
    rows.push_back({g.family, g.generator, std::to_string(g.n), num(g.gap), num(g.kl1), num(g.kl2),
                    num(g.measured_distance), num(g.bound), num(two_root), flag(ok), why});
  }
  const auto path = output_path(c, ".csv");
  emit_csv(path,
           {"family", "generator", "n", "gap", "kl1", "kl2", "distance", "bound", "two_sqrt_gap", "ok", "violations"},
           std::move(rows), 0);
  out << "gap-sweep: " << reports.size() << " rows, " << bad << " violating -> " << path.string() << '\n';
  return bad == 0 ? 0 : 1;
}

int commit_reduce_cmd(const ExperimentConfig& c, std::ostream& out) {
  const commitments::FunctionCommitment s(commitments::parse_function_kind(c.scheme), c.l, c.k, c.m);
  const auto coins = commitments::sample_receiver_coins(c.seed, c.samples);
  const auto family = commitments::scheme_to_hash_family(s, coins);
  std::vector<Row> rows;
  int bad = 0;
  for (std::size_t i = 0; i < family.keys().size(); ++i) {
    const auto r = commitments::col_equivocation_rate(s, family.keys()[i]);
    const bool ok = r.markov_holds && r.openings_valid && (c.l == 1 ? r.rate_bound_holds : r.string_bound_holds);
    bad += !ok;
    rows.push_back({s.name(), std::to_string(i), num(r.epsilon), num(r.eps_joint), num(r.markov_mass),
                    num(r.rate), num(r.bound), num(r.same_rate), num(r.string_bound), flag(ok)});
  }
  const auto path = output_path(c, ".csv");
  emit_csv(path,
           {"scheme", "h_index", "epsilon", "eps_joint", "markov_mass", "rate", "rate_bound", "same_rate",
            "string_bound", "ok"},
           std::move(rows), 0);
  out << "commit-reduce: " << coins.size() << " keys, " << bad << " violating -> " << path.string() << '\n';
  return bad == 0 ? 0 : 1;
}

int szk_protocol_cmd(const ExperimentConfig& c, std::ostream& out) {
  std::vector<Row> rows;
  int bad = 0;
  auto put = [&](int n, const std::string& table, const std::string& key, const std::string& value) {
    rows.push_back({std::to_string(n), table, key, value});
  };
  for (int n = c.n.lo; n <= c.n.hi; ++n) {
    szkcommit::SzkParams q;
    q.n = n;
    q.k = c.k;
    q.output_bits = std::max(q.output_bits, 1 + c.k);
    q.seed = c.seed;
    const szkcommit::PromiseProblem p(q);
    const szkcommit::Sbc sbc(szkcommit::SbcKind::ideal, q.coin_bits);

    const auto comp = szkcommit::completeness_sweep(p, sbc, c.seed);
    const auto tamper = szkcommit::tamper_sweep(p, sbc, c.seed);
    bad += !comp.ok() + !tamper.ok();
    put(n, "completeness", "runs", std::to_string(comp.runs));
    put(n, "completeness", "accepted", std::to_string(comp.accepted));
    put(n, "completeness", "idc_accepted", std::to_string(comp.idc_accepted) + "/" + std::to_string(comp.idc_checks));
    put(n, "tamper", "no_accepted", std::to_string(tamper.accepted_on_no) + "/" + std::to_string(tamper.flips_on_no));
    put(n, "tamper", "yes_accepted",
        std::to_string(tamper.accepted_on_yes) + "/" + std::to_string(tamper.flips_on_yes));

    const szkcommit::Instance& no = p.no_pool().front();
    for (const auto& rs : {szkcommit::honest_receiver(p, c.seed), szkcommit::column_receiver(p, c.seed, 1, no),
                           szkcommit::planted_receiver(p, c.seed, no)}) {
      const auto h = szkcommit::hiding_experiment(p, sbc, rs);
      bad += !h.ok();
      const std::string t = "hiding/" + h.receiver;
      put(n, t, "inadmissible", num(h.inadmissible_prob));
      put(n, t, "inadmissible_bound", num(h.inadmissible_bound));
      put(n, t, "epsilon_given_admissible", num(h.epsilon_given_admissible));
      put(n, t, "max_yes_epsilon", num(h.max_yes_epsilon));
      put(n, t, "total_distance", num(h.total_distance));
      put(n, t, "ok", flag(h.ok()));
    }

    const auto hy = szkcommit::hybrid_sweep(p, sbc, szkcommit::equivocating_sender(p, sbc));
    bad += !hy.ok();
    for (int i = 0; i < 5; ++i) put(n, "hybrid", "pr_e_h" + std::to_string(i), num(hy.pr_e[i]));
    put(n, "hybrid", "epsilon_star", num(hy.epsilon_star));
    put(n, "hybrid", "h4_bound", num(hy.h4_bound));
    put(n, "hybrid", "decider_success", num(hy.decider_success));
    put(n, "hybrid", "decider_bound", num(hy.decider_bound));
    put(n, "hybrid", "ok", flag(hy.ok()));
  }
  const auto path = output_path(c, ".csv");
  emit_csv(path, {"n", "table", "key", "value"}, std::move(rows), 3);
  out << "szk-protocol: " << bad << " failing checks -> " << path.string() << '\n';
  return bad == 0 ? 0 : 1;
}

int verify_all_cmd(const ExperimentConfig& c, std::ostream& out) {
  const auto results = acceptance::run_all({.seed = c.seed, .inject_fault = c.inject_fault});
  const auto path = output_path(c, ".txt");
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file " + path.string());
  acceptance::write_report(f, results);
  acceptance::write_report(out, results);
  const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  out << (all ? "verify-all: PASS" : "verify-all: FAIL") << " -> " << path.string() << '\n';
  return all ? 0 : 1;
}

void validate(const ExperimentConfig& c) {
  const Caps caps;
  if (c.n.lo < 1 || c.n.lo > c.n.hi) throw ConfigError("empty or invalid n range");
  check_input_bits(c.n.hi, caps);
  if (c.k < 1 || c.m < 1 || c.l < 1) throw ConfigError("k, m and l must be positive");
  if (c.samples == 0) throw ConfigError("samples must be positive");
  if (c.subcommand == "entropy" && c.n.hi > 12) throw ConfigError("entropy supports n up to 12");
  if (c.subcommand == "szk-protocol" && c.n.hi > 3) throw ConfigError("szk-protocol supports n up to 3");
}

}  // namespace

Range parse_range(const std::string& text) {
  try {
    std::size_t used = 0;
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
      const int v = std::stoi(text, &used);
      if (used != text.size()) throw ConfigError("");
      return {v, v};
    }
    const std::string a = text.substr(0, dots);
    const std::string b = text.substr(dots + 2);
    Range r;
    r.lo = std::stoi(a, &used);
    if (used != a.size()) throw ConfigError("");
    r.hi = std::stoi(b, &used);
    if (used != b.size()) throw ConfigError("");
    return r;
  } catch (const std::exception&) {
    throw ConfigError("malformed range '" + text + "', expected a..b");
  }
}

int run(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  try {
    validate(c);
    if (c.subcommand == "entropy") return entropy_cmd(c, out);
    if (c.subcommand == "dcrh-game") return dcrh_game_cmd(c, out);
    if (c.subcommand == "gap-sweep") return gap_sweep_cmd(c, out);
    if (c.subcommand == "commit-reduce") return commit_reduce_cmd(c, out);
    if (c.subcommand == "szk-protocol") return szk_protocol_cmd(c, out);
    if (c.subcommand == "verify-all") return verify_all_cmd(c, out);
    err << "unknown subcommand '" << c.subcommand << "'\n";
    return 2;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact finite experiments on collision resistance, inaccessible entropy and commitments", "dcrhlab"};

  ExperimentConfig c;
  std::string n_text;
  std::string mode = "exact";
  bool exact = false;
  std::string out_text;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"entropy", "probkit identities on seeded random distributions"},
      {"dcrh-game", "distance of adversaries to Col per family"},
      {"gap-sweep", "inaccessible entropy gap bounds over generators and families"},
      {"commit-reduce", "equivocation rate of the commitment-derived hash"},
      {"szk-protocol", "completeness, tamper, hiding and hybrid tables"},
      {"verify-all", "full acceptance suite"},
  };
  app.set_config("--config", "", "flat key=value file overriding defaults");
  app.fallthrough();
  app.add_option("--seed", c.seed, "seed for all randomness");
  app.add_flag("--exact", exact, "exact rational arithmetic");
  app.add_option("--n", n_text, "input length range a..b");
  app.add_option("--k", c.k, "sender coin bits");
  app.add_option("--m", c.m, "commitment output bits");
  app.add_option("--l", c.l, "plaintext bits");
  app.add_option("--family", c.family, "family name or all");
  app.add_option("--generator", c.generator, "generator name or all");
  app.add_option("--scheme", c.scheme, "commitment function kind");
  app.add_option("--mode", mode, "exact or monte-carlo")->check(CLI::IsMember({"exact", "monte-carlo"}));
  app.add_option("--samples", c.samples, "trials, keys or Monte-Carlo samples");
  app.add_option("--out", out_text, "output file");
  app.add_flag("--inject-fault", c.inject_fault, "add a deliberately inconsistent generator");
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }
  const auto chosen = app.get_subcommands();
  if (chosen.empty()) {
    out << app.help();
    return 2;
  }
  c.subcommand = chosen.front()->get_name();
  if (c.subcommand == "verify-all") c.n = {1, 8};
  if (c.subcommand == "szk-protocol") c.n = {1, 2};
  try {
    if (!n_text.empty()) c.n = parse_range(n_text);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  }
  c.mode = exact || mode == "exact" ? Mode::exact : Mode::monte_carlo;
  c.out = out_text;
  return run(c, out, err);
}

}  // namespace dcrhlab::cli
