// Copyright 2026 The opminer Authors
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

#ifndef OPMINER_ERROR_HPP_
#define OPMINER_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace opminer {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: files, labels, graph construction.
class InputError : public Error {
 public:
  using Error::Error;
};

// Operation precondition violated by the caller (e.g. a disconnected graph
// passed to canonical_code, an out-of-range threshold).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A model or rule application result does not conform to its meta-model.
class ConformanceError : public Error {
 public:
  using Error::Error;
};

// Rule application found no valid binding.
class NoMatchError : public Error {
 public:
  using Error::Error;
};

// A wall-clock budget ran out before an operation finished.
class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

}  // namespace opminer

#endif  // OPMINER_ERROR_HPP_
