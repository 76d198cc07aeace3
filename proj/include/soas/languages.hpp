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

#ifndef SOAS_LANGUAGES_HPP
#define SOAS_LANGUAGES_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "soas/typecheck.hpp"
#include "soas/unification.hpp"

namespace soas {

struct Language {
  std::string name;
  Theory theory;
  std::optional<TypeSystem> typing;  // absent for the untyped calculus

  const Signature& signature() const { return theory.signature; }
  const Reducer& reducer() const { return theory.reducer; }
};

/// Untyped lambda calculus: Lam(scope), App(term, term).
const Language& ulc();

/// Simply typed lambda calculus with pairs. Lam carries an optional domain
/// annotation; U is the universe term that types are checked against.
const Language& stlc();

/// Martin-Löf type theory with one universe (U : U), Pi, Sigma and identity
/// types. J takes (A, a, C, d, x, p).
const Language& mltt();

// nullptr for unknown names.
const Language* find_language(std::string_view name);

std::vector<std::string> language_names();

}  // namespace soas

#endif  // SOAS_LANGUAGES_HPP
