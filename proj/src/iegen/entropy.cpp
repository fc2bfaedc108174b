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

#include "dcrhlab/iegen/entropy.hpp"

#include <cmath>
#include <map>
#include <set>

#include "dcrhlab/common/error.hpp"
#include "dcrhlab/probkit/logsum.hpp"

namespace dcrhlab::iegen {
namespace {

using probkit::LogSum;
using Tuple = std::vector<std::uint64_t>;
using PrefixCounts = std::map<Tuple, std::uint64_t>;

// counts[j] maps each length-j output prefix to its number of seeds, j = 0..m.
std::vector<PrefixCounts> prefix_counts(const BlockGenerator& g, std::uint64_t z, std::vector<Tuple>* outputs) {
  std::vector<PrefixCounts> counts(g.num_blocks() + 1);
  for (std::uint64_t x = 0; x < g.seed_space(); ++x) {
    Tuple y = g(z, x);
    for (int j = 0; j <= g.num_blocks(); ++j) ++counts[j][Tuple(y.begin(), y.begin() + j)];
    if (outputs) outputs->push_back(std::move(y));
  }
  return counts;
}

template <class Num>
bool routes_agree(const Bits<Num>& a, const Bits<Num>& b) {
  if constexpr (probkit::is_exact_v<Num>) {
    return a == b;
  } else {
    return std::abs(a - b) <= probkit::kFloatTolerance;
  }
}

struct BlockRoute {
  const OnlineGenerator& gt;
  LogSum sum;
  std::vector<std::uint64_t> coins;

  void node(std::uint64_t z, int i, std::uint64_t den) {
    const std::uint64_t v = gt.coin_space(i, z, coins);
    if (den > (std::uint64_t{1} << 62) / v) throw CapExceeded(gt.name() + ": coin space too large");
    std::map<Block, std::uint64_t> counts;
    coins.push_back(0);
    for (std::uint64_t r = 0; r < v; ++r) {
      coins[i] = r;
      ++counts[gt.block(i, z, coins)];
    }
    // H of the block law at this node, weighted by the node probability 1/den.
    sum.add(1, den, v);
    sum.add_counts_xlogx(-1, den * v, counts);
    if (i + 1 < gt.num_blocks()) {
      for (std::uint64_t r = 0; r < v; ++r) {
        coins[i] = r;
        node(z, i + 1, den * v);
      }
    }
    coins.pop_back();
  }
};

struct TranscriptRoute {
  const OnlineGenerator& gt;
  LogSum sum;
  std::vector<std::uint64_t> coins;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> terms;  // (alphabet, matching coins) per block

  void node(std::uint64_t z, int i, std::uint64_t den) {
    if (i == gt.num_blocks()) {
      for (const auto& [v, c] : terms) {
        sum.add(1, den, v);
        sum.add(-1, den, c);
      }
      return;
    }
    const std::uint64_t v = gt.coin_space(i, z, coins);
    if (den > (std::uint64_t{1} << 62) / v) throw CapExceeded(gt.name() + ": coin space too large");
    std::vector<Block> blocks(v);
    std::map<Block, std::uint64_t> counts;
    coins.push_back(0);
    for (std::uint64_t r = 0; r < v; ++r) {
      coins[i] = r;
      blocks[r] = gt.block(i, z, coins);
      ++counts[blocks[r]];
    }
    for (std::uint64_t r = 0; r < v; ++r) {
      coins[i] = r;
      terms.emplace_back(v, counts[blocks[r]]);
      node(z, i + 1, den * v);
      terms.pop_back();
    }
    coins.pop_back();
  }
};

struct StopWalk {};

}  // namespace

template <class Num>
Bits<Num> real_sample_entropy(const BlockGenerator& g, std::uint64_t z, std::span<const std::uint64_t> y_prefix) {
  if (z >= g.z_space()) throw OutOfSupport("public parameter outside its space");
  if (y_prefix.size() > static_cast<std::size_t>(g.num_blocks())) throw OutOfSupport("prefix longer than output");
  const auto counts = prefix_counts(g, z, nullptr);
  LogSum sum;
  for (std::size_t j = 0; j < y_prefix.size(); ++j) {
    const auto prev = counts[j].find(Tuple(y_prefix.begin(), y_prefix.begin() + j));
    const auto cur = counts[j + 1].find(Tuple(y_prefix.begin(), y_prefix.begin() + j + 1));
    if (cur == counts[j + 1].end()) throw OutOfSupport("output prefix outside the support of G(z, .)");
    sum.add(1, 1, prev->second);
    sum.add(-1, 1, cur->second);
  }
  return sum.total<Num>();
}

template <class Num>
RealEntropy<Num> real_entropy(const BlockGenerator& g) {
  LogSum conditional, by_samples;
  const std::uint64_t s = g.seed_space();
  const std::uint64_t zs = g.z_space() * s;
  for (std::uint64_t z = 0; z < g.z_space(); ++z) {
    std::vector<Tuple> outputs;
    const auto counts = prefix_counts(g, z, &outputs);
    conditional.add(1, g.z_space(), s);
    conditional.add_counts_xlogx(-1, zs, counts.back());
    for (const Tuple& y : outputs) {
      for (int j = 0; j < g.num_blocks(); ++j) {
        by_samples.add(1, zs, counts[j].at(Tuple(y.begin(), y.begin() + j)));
        by_samples.add(-1, zs, counts[j + 1].at(Tuple(y.begin(), y.begin() + j + 1)));
      }
    }
  }
  RealEntropy<Num> r{conditional.total<Num>(), by_samples.total<Num>()};
  if (!routes_agree<Num>(r.conditional, r.by_samples)) {
    throw InvariantViolation(g.name() + ": real entropy routes disagree");
  }
  return r;
}

template <class Num>
Bits<Num> accessible_sample_entropy(const OnlineGenerator& gt, const Transcript& t) {
  if (!transcript_valid(gt, t)) throw InvariantViolation(gt.name() + ": invalid transcript " + to_string(t));
  LogSum sum;
  std::vector<std::uint64_t> coins;
  for (int i = 0; i < gt.num_blocks(); ++i) {
    const std::uint64_t v = gt.coin_space(i, t.z, coins);
    std::uint64_t c = 0;
    coins.push_back(0);
    for (std::uint64_t r = 0; r < v; ++r) {
      coins[i] = r;
      if (gt.block(i, t.z, coins) == t.blocks[i]) ++c;
    }
    coins[i] = t.coins[i];
    sum.add(1, 1, v);
    sum.add(-1, 1, c);
  }
  return sum.total<Num>();
}

template <class Num>
AccessibleEntropy<Num> accessible_entropy(const OnlineGenerator& gt) {
  BlockRoute blocks{gt, {}, {}};
  TranscriptRoute transcripts{gt, {}, {}, {}};
  for (std::uint64_t z = 0; z < gt.z_space(); ++z) {
    blocks.node(z, 0, gt.z_space());
    transcripts.node(z, 0, gt.z_space());
  }
  AccessibleEntropy<Num> r{blocks.sum.total<Num>(), transcripts.sum.total<Num>()};
  if (!routes_agree<Num>(r.by_blocks, r.by_transcripts)) {
    throw InvariantViolation(gt.name() + ": accessible entropy routes disagree");
  }
  return r;
}

Consistency check_consistent(const OnlineGenerator& gt, const BlockGenerator& g) {
  if (gt.z_space() != g.z_space()) return {false, std::nullopt, "public-parameter spaces differ"};
  if (gt.num_blocks() != g.num_blocks()) return {false, std::nullopt, "block counts differ"};
  std::map<std::uint64_t, std::set<Tuple>> support;
  Consistency result;
  try {
    for_each_transcript(gt, [&](const Transcript& t, std::uint64_t) {
      for (int i = 0; i < g.num_blocks(); ++i) {
        if (t.blocks[i].length != g.block_lengths()[i]) {
          result = {false, t, "block " + std::to_string(i + 1) + " has length " +
                                  std::to_string(t.blocks[i].length) + ", expected " +
                                  std::to_string(g.block_lengths()[i])};
          throw StopWalk{};
        }
      }
      auto it = support.find(t.z);
      if (it == support.end()) {
        std::set<Tuple> s;
        for (std::uint64_t x = 0; x < g.seed_space(); ++x) s.insert(g(t.z, x));
        it = support.emplace(t.z, std::move(s)).first;
      }
      Tuple y;
      for (const Block& b : t.blocks) y.push_back(b.value);
      if (!it->second.contains(y)) {
        result = {false, t, "output is not in the support of G(z, .)"};
        throw StopWalk{};
      }
    });
  } catch (const StopWalk&) {
  }
  return result;
}

bool has_real_min_entropy(const BlockGenerator& g, int block, double k, double failure) {
  if (block < 0 || block >= g.num_blocks()) throw OutOfSupport("block index out of range");
  std::uint64_t bad = 0;
  for (std::uint64_t z = 0; z < g.z_space(); ++z) {
    std::vector<Tuple> outputs;
    const auto counts = prefix_counts(g, z, &outputs);
    for (const Tuple& y : outputs) {
      const double prev = static_cast<double>(counts[block].at(Tuple(y.begin(), y.begin() + block)));
      const double cur = static_cast<double>(counts[block + 1].at(Tuple(y.begin(), y.begin() + block + 1)));
      if (std::log2(prev / cur) < k - 1e-12) ++bad;
    }
  }
  const double total = static_cast<double>(g.z_space()) * static_cast<double>(g.seed_space());
  return static_cast<double>(bad) / total <= failure;
}

#define DCRHLAB_INSTANTIATE(Num)                                                                          \
  template Bits<Num> real_sample_entropy<Num>(const BlockGenerator&, std::uint64_t,                      \
                                              std::span<const std::uint64_t>);                            \
  template RealEntropy<Num> real_entropy<Num>(const BlockGenerator&);                                     \
  template Bits<Num> accessible_sample_entropy<Num>(const OnlineGenerator&, const Transcript&);           \
  template AccessibleEntropy<Num> accessible_entropy<Num>(const OnlineGenerator&);

DCRHLAB_INSTANTIATE(probkit::Rational)
DCRHLAB_INSTANTIATE(double)

}  // namespace dcrhlab::iegen
