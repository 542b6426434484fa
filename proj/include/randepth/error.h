/*
 * Copyright 2026 The randepth Authors.
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

#ifndef RANDEPTH_ERROR_H_
#define RANDEPTH_ERROR_H_

#include <stdexcept>
#include <string>

namespace randepth {

// Raised when a caller breaks an operation's precondition (length mismatch,
// empty candidate set, out-of-range configuration value).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised on malformed input files and unreadable/unwritable paths.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void Require(bool condition, const std::string& message) {
  if (!condition) throw ContractViolation(message);
}

}  // namespace randepth

#endif  // RANDEPTH_ERROR_H_
