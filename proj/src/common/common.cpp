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

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "dcrhlab/common/bits.hpp"
#include "dcrhlab/common/caps.hpp"
#include "dcrhlab/common/csv.hpp"
#include "dcrhlab/common/error.hpp"
#include "dcrhlab/common/hex.hpp"
#include "dcrhlab/common/rng.hpp"

namespace dcrhlab {

void check_input_bits(int n, const Caps& caps) {
  if (n < 1) throw ConfigError("input length must be at least 1 bit");
  if (caps.max_input_bits > caps.hard_input_bits) {
    throw ConfigError("input-bit cap above hard limit " + std::to_string(caps.hard_input_bits));
  }
  if (n > caps.max_input_bits) {
    throw CapExceeded("n = " + std::to_string(n) + " exceeds enumeration cap " +
                      std::to_string(caps.max_input_bits));
  }
}

void check_tape_space(std::uint64_t space, const Caps& caps) {
  if (space == 0) throw ConfigError("empty tape space");
  if (space > caps.max_tape_space()) {
    throw CapExceeded("tape space " + std::to_string(space) + " exceeds 2^" +
                      std::to_string(caps.max_tape_bits));
  }
}

std::string bit_string(std::uint64_t v, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i) {
    if ((v >> (width - 1 - i)) & 1U) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

std::uint64_t lcm_checked(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t g = std::gcd(a, b);
  const std::uint64_t q = a / g;
  if (b != 0 && q > std::numeric_limits<std::uint64_t>::max() / b) {
    throw CapExceeded("lcm overflows 64 bits");
  }
  return q * b;
}

namespace {
constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw ProtocolError(std::string("invalid hex digit '") + c + "'");
}
}  // namespace

std::string to_hex(std::span<const std::uint8_t> bytes) {
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 0xF]);
  }
  return out;
}

std::vector<std::uint8_t> from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw ProtocolError("odd-length hex string");
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(hex_value(hex[2 * i]) * 16 + hex_value(hex[2 * i + 1]));
  }
  return out;
}

std::string hex_word(std::uint64_t v, int bits) {
  const int digits = (bits + 3) / 4;
  std::string out(static_cast<std::size_t>(digits), '0');
  for (int i = 0; i < digits; ++i) {
    out[static_cast<std::size_t>(digits - 1 - i)] = kHexDigits[(v >> (4 * i)) & 0xF];
  }
  return out;
}

std::uint64_t parse_hex_word(std::string_view hex) {
  if (hex.size() > 16) throw ProtocolError("hex word longer than 64 bits");
  std::uint64_t v = 0;
  for (char c : hex) v = (v << 4) | static_cast<std::uint64_t>(hex_value(c));
  return v;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t s = splitmix64(base);
  for (std::uint64_t t : tags) s = splitmix64(s ^ splitmix64(t + 0x632BE59BD9B4E019ULL));
  return s;
}

std::uint64_t Rng::bits(int count) {
  if (count <= 0) return 0;
  return engine_() & low_mask(count);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  // Rejection on the largest multiple of bound keeps the draw exactly uniform.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v = engine_();
  while (v >= limit) v = engine_();
  return v % bound;
}

double Rng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> header)
    : out_(out), columns_(header.size()) {
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) {
    throw InvariantViolation("csv row has " + std::to_string(fields.size()) + " fields, expected " +
                             std::to_string(columns_));
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << csv_field(fields[i]);
  }
  out_ << '\n';
}

std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  if (v == 0.0) return "0";  // folds -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace dcrhlab
