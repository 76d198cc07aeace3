// Copyright 2026 The soas Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SOAS_ERROR_HPP
#define SOAS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace soas {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A step budget ran out: a diverging reduction, a runaway guess loop, or
// a candidate search that could not be finished.
class FuelExhausted : public Error {
 public:
  using Error::Error;
};

// A metavariable application whose argument count disagrees with the arity
// of its substitution entry.
class ArityMismatch : public Error {
 public:
  using Error::Error;
};

class MissingAssignment : public Error {
 public:
  using Error::Error;
};

class ConflictingEntry : public Error {
 public:
  using Error::Error;
};

// Raised when a term does not fit the operator table it is built against.
class MalformedTerm : public Error {
 public:
  using Error::Error;
};

}  // namespace soas

#endif  // SOAS_ERROR_HPP
