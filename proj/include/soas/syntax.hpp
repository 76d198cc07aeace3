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

#ifndef SOAS_SYNTAX_HPP
#define SOAS_SYNTAX_HPP

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "soas/error.hpp"
#include "soas/languages.hpp"
#include "soas/metavar.hpp"
#include "soas/term.hpp"
#include "soas/unification.hpp"

namespace soas {

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  // The message without the position prefix.
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

// A well-formed construct the selected language does not have.
class UnknownConstruct : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

/// Surface syntax shared by all languages:
///
///   \x y. t    \(x : A). t    f a    A -> B    (x : A) -> B
///   A * B      (x : A) * B    <a, b>    first t    second t
///   U    a = b    refl t    J(A, a, C, d, x, p)    ?m[t1, ..., tn]
///
/// Names bound by an enclosing lambda or binder become de Bruijn indices;
/// every other name is free.
Term parse_term(std::string_view src, const Language& lang);

// [forall x y.]* lhs =?= rhs
Constraint parse_constraint(std::string_view src, const Language& lang);

/// Prints `t` in the surface syntax. Binders get fresh names that avoid
/// every free name of `t` and every name already in scope. `scope` names
/// the variables bound outside `t`, innermost last; `holes` names holes.
std::string print_term(const Term& t, const std::vector<std::string>& scope = {},
                       const std::vector<std::string>& holes = {});

/// Prints an inferred term as `t : T`. Inner operator nodes print as
/// `(node : T)`; U-infinity annotations are left out.
std::string print_typed(const Term& t);

std::string print_annotation(const TypeAnnotation& ann);

std::string print_constraint(const Constraint& c);

// ?m[x1, ..., xn] := body
std::string print_meta_entry(const std::string& id, const MetaAbs& abs);

// S-expression form of the abstract term, annotations included.
std::string print_ast(const Term& t);

// Metavariable ids in order of first occurrence, annotations included.
void collect_metas(const Term& t, std::vector<std::string>& order);

// Simultaneously renames metavariables; ids missing from `names` are kept.
Term rename_metas(const Term& t, const std::map<std::string, std::string>& names);

// Maps each id in `order` to prefix1, prefix2, ...
std::map<std::string, std::string> canonical_names(
    const std::vector<std::string>& order, const std::string& prefix = "m");

}  // namespace soas

#endif  // SOAS_SYNTAX_HPP
