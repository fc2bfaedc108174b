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

#include <stdexcept>
#include <string>

namespace dcrhlab {

// Base for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two distributions (or a distribution and an outcome) live on different domains.
class DomainMismatch : public Error {
 public:
  using Error::Error;
};

// An enumeration would exceed the configured work cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// Sample-entropy (or a conditional law) was requested outside the support.
class OutOfSupport : public Error {
 public:
  using Error::Error;
};

// An identity or inequality that must hold by construction was violated.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// Malformed protocol traffic or a protocol run in the wrong phase.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace dcrhlab
