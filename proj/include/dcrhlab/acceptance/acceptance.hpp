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
#include <iosfwd>
#include <string>
#include <vector>

#include "dcrhlab/dcrh2ie/reduction.hpp"

namespace dcrhlab::acceptance {

struct Options {
  std::uint64_t seed = 7;
  bool inject_fault = false;  // adds an inconsistent generator to the gap sweep
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

// One row per (family, generator, n), failures recorded in `violations`.
std::vector<dcrh2ie::GapReport> gap_sweep(const std::vector<hashfam::FamilyKind>& families,
                                          const std::vector<dcrh2ie::GeneratorKind>& generators, int n_lo, int n_hi,
                                          std::uint64_t seed, probkit::Arithmetic arithmetic);

CriterionResult real_entropy_criterion(const Options& o);
CriterionResult gap_bound_criterion(const Options& o, const std::vector<dcrh2ie::GapReport>& rows);
CriterionResult tightness_criterion(const Options& o, const std::vector<dcrh2ie::GapReport>& rows);
CriterionResult probkit_criterion(const Options& o);
CriterionResult commitment_criterion(const Options& o);
CriterionResult completeness_criterion(const Options& o);
CriterionResult binding_criterion(const Options& o);
CriterionResult hiding_criterion(const Options& o);

// Criteria 1-8 in order.
std::vector<CriterionResult> run_all(const Options& o);

// One line per criterion; contains no timings.
void write_report(std::ostream& out, const std::vector<CriterionResult>& results);
std::string format_line(const CriterionResult& r);

}  // namespace dcrhlab::acceptance
