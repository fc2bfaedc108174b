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

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace dcrhlab {

// RFC 4180 field quoting: fields containing comma, quote, CR or LF are quoted
// and embedded quotes doubled.
std::string csv_field(std::string_view field);

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header);

  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

// Fixed "%.12g" rendering so reports are stable across runs.
std::string format_real(double v);

std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace dcrhlab
