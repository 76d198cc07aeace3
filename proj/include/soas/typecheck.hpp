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

#ifndef SOAS_TYPECHECK_HPP
#define SOAS_TYPECHECK_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "soas/metavar.hpp"
#include "soas/term.hpp"
#include "soas/unification.hpp"

namespace soas {

enum class TypeErrorKind {
  UnificationFailure,
  DependencyEscape,
  ArityMismatch,
  FuelExhausted,
  Unsupported,
};

const char* to_string(TypeErrorKind kind);

class TypeError : public Error {
 public:
  TypeError(TypeErrorKind kind, const std::string& what,
            std::optional<Constraint> constraint = std::nullopt,
            Term offending = {}, std::size_t level = 0)
      : Error(what),
        kind_(kind),
        constraint_(std::move(constraint)),
        offending_(std::move(offending)),
        level_(level) {}

  TypeErrorKind kind() const { return kind_; }
  const std::optional<Constraint>& constraint() const { return constraint_; }
  const Term& offending() const { return offending_; }
  // Number of binders in scope where the error arose.
  std::size_t level() const { return level_; }

 private:
  TypeErrorKind kind_;
  std::optional<Constraint> constraint_;
  Term offending_;
  std::size_t level_;
};

/// Typing context threaded through inference.
///
/// Bound variable types are stored in the context they were introduced in:
/// entry i lives at depth i. Metavariable types are bodies over holes, one
/// per parameter. Free variables get closed types.
struct TypeInfo {
  std::map<std::string, TypeAnnotation> free_var_types;
  std::vector<TypeAnnotation> bound_var_types;
  std::map<std::string, TypeAnnotation> meta_var_types;
  MetaSubstitution meta_var_substs;
  std::vector<Constraint> constraints;  // unsolved flex-flex remainder
  FreshSupply supply;
};

class Checker;

// Infers an operator node, returning it with annotated children and an
// annotation of its own.
using InferNodeFn = std::function<Term(Checker&, const Term& node)>;

struct TypeSystem {
  Theory theory;
  Term universe;  // the term standing for U-infinity where a term is needed
  InferNodeFn infer_node;
};

class Checker {
 public:
  explicit Checker(const TypeSystem& system, SearchConfig cfg = {});

  const TypeSystem& system() const { return system_; }
  const SearchConfig& config() const { return cfg_; }
  TypeInfo& info() { return info_; }
  const TypeInfo& info() const { return info_; }
  std::size_t depth() const { return info_.bound_var_types.size(); }

  // Returns `t` with every node except variables annotated by its type.
  Term infer(const Term& t);

  // Infers `ty` as a type, then `t` against it.
  Term check(const Term& t, const Term& ty);

  // Reconciles the annotation of `annotated` with `expected`.
  void should_have_type(const Term& annotated, const TypeAnnotation& expected);

  // Unifies two types at the current depth together with the pending
  // constraints. Throws TypeError on failure.
  void unify_with_expected(const Term& actual, const Term& expected);

  // Runs `body` with one more bound variable of type `ty`.
  template <class F>
  auto in_scope(TypeAnnotation ty, F&& body) -> decltype(body()) {
    info_.bound_var_types.push_back(std::move(ty));
    struct Pop {
      TypeInfo& info;
      std::size_t depth;
      ~Pop() {
        auto& v = info.bound_var_types;
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(depth), v.end());
      }
    } pop{info_, info_.bound_var_types.size() - 1};
    return body();
  }

  // Variables carry no annotation; their types come from the context at the
  // current depth.
  TypeAnnotation type_of(const Term& annotated) const;

  // Term form of an annotation: the universe term for U-infinity.
  Term type_term(const TypeAnnotation& ann) const;

  /// Moves a type from under the innermost binder to the enclosing context.
  /// Metavariable arguments mentioning the binder are pruned; any other
  /// occurrence throws DependencyEscape.
  Term non_dep(const Term& ty);

  // ?m[x1..xD] over every bound variable in scope, a type of U-infinity.
  Term fresh_type_meta_var();

  // Applies the solved metavariables, annotations included.
  Term clarify(const Term& t) const;
  TypeAnnotation clarify(const TypeAnnotation& ann) const;

  // Weak head normal form of a clarified, annotation-free copy.
  Term whnf(const Term& t) const;

  // Runs `f`; on TypeError restores the context and returns nullopt.
  template <class F>
  auto attempt(F&& f) -> std::optional<decltype(f())> {
    TypeInfo saved = info_;
    try {
      return f();
    } catch (const TypeError&) {
      info_ = std::move(saved);
      return std::nullopt;
    }
  }

  // First alternative that does not throw. Rethrows the last error.
  Term first_success(const std::vector<std::function<Term()>>& options);

 private:
  Term infer_var(const Term& t);
  Term infer_meta(const Term& t);
  void clarify_context();

  const TypeSystem& system_;
  SearchConfig cfg_;
  TypeInfo info_;
};

struct Inferred {
  Term term;             // annotated, clarified
  TypeAnnotation type;   // clarified
  TypeInfo info;
};

Inferred infer_type(const TypeSystem& system, const Term& t,
                    const SearchConfig& cfg = {});
Inferred check_type(const TypeSystem& system, const Term& t, const Term& ty,
                    const SearchConfig& cfg = {});

}  // namespace soas

#endif  // SOAS_TYPECHECK_HPP
