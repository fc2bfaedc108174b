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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace dcrhlab::cli {

enum class Mode { exact, monte_carlo };

struct Range {
  int lo = 0;
  int hi = 0;
};

// "a..b" or a single value.
Range parse_range(const std::string& text);

struct ExperimentConfig {
  std::string subcommand;
  Range n{2, 6};
  int k = 6;
  int m = 3;
  int l = 1;
  std::string family = "all";
  std::string generator = "all";
  std::string scheme = "random";
  Mode mode = Mode::exact;
  std::uint64_t samples = 100;
  std::uint64_t seed = 7;
  std::filesystem::path out;
  bool inject_fault = false;
};

// Exit codes: 0 success, 1 invariant failure, 2 usage or config error.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (flags, then --config overrides) and runs the subcommand.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace dcrhlab::cli
