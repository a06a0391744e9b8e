/*
 * Copyright 2026 The Oracle Sim Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace oracle {

// Caller passed a value outside an operation's domain.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Node id not present in a reputation table or engine registry.
class RegistrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation not legal in the current lifecycle state.
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Run configuration rejected before any task executed.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// File could not be opened or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-fatal diagnostic emitted by routines that clamp or fall outside the
// model's derivation. Collected by callers that care; ignored otherwise.
struct Warning {
  std::string code;
  std::string message;
};

}  // namespace oracle
