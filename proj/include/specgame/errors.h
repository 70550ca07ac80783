// Copyright 2026 The specgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPECGAME_ERRORS_H_
#define SPECGAME_ERRORS_H_

#include <stdexcept>
#include <string>

namespace specgame {

// Raised when a caller hands in a value that violates a documented
// precondition (bad probabilities, theta <= 0, unknown config key, ...).
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when an internal invariant is found broken at runtime. This always
// indicates a wiring bug, never bad user input.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace specgame

#endif  // SPECGAME_ERRORS_H_
