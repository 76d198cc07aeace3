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

#ifndef SOAS_TERM_HPP
#define SOAS_TERM_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "soas/error.hpp"

namespace soas {

class Signature;

// How an operator slot relates to binding. A Scope child sits under one
// extra binder; an OptionalTerm child may be absent.
enum class SlotKind { Term, Scope, OptionalTerm };

struct Operator {
  std::string tag;
  std::vector<SlotKind> slots;

  std::size_t arity() const { return slots.size(); }
};

using OperatorRef = std::shared_ptr<const Operator>;

enum class VarKind { Bound, Free, Hole };

class Term;

/// Either the top universe marker or an ordinary type term.
class TypeAnnotation {
 public:
  static TypeAnnotation universe() { return TypeAnnotation(); }
  static TypeAnnotation of(Term type);

  bool is_universe() const { return type_ == nullptr; }
  // Requires !is_universe().
  const Term& type() const;

  friend bool operator==(const TypeAnnotation& a, const TypeAnnotation& b);

 private:
  TypeAnnotation() = default;
  explicit TypeAnnotation(std::shared_ptr<const Term> type)
      : type_(std::move(type)) {}
  std::shared_ptr<const Term> type_;
};

/// Immutable scoped term: a variable, a metavariable application, or an
/// operator node. Bound variables are de Bruijn indices counted from the
/// innermost binder; holes are parameter positions of metavariable bodies.
///
/// Copies share structure. A default-constructed Term is "absent" and is
/// only meaningful as the child of an OptionalTerm slot.
class Term {
 public:
  enum class Kind { Absent, Var, Meta, Op };

  Term() = default;

  static Term bound(std::size_t index);
  static Term free(std::string name);
  static Term hole(std::size_t index);
  static Term meta(std::string id, std::vector<Term> args,
                   std::optional<TypeAnnotation> annotation = std::nullopt);
  static Term op(OperatorRef op, std::vector<Term> children,
                 std::optional<TypeAnnotation> annotation = std::nullopt);

  Kind kind() const;
  bool absent() const { return node_ == nullptr; }
  bool is_var() const { return kind() == Kind::Var; }
  bool is_bound() const;
  bool is_free() const;
  bool is_hole() const;
  bool is_meta() const { return kind() == Kind::Meta; }
  bool is_op() const { return kind() == Kind::Op; }

  VarKind var_kind() const;
  // Bound or hole index.
  std::size_t index() const;
  // Free variable name.
  const std::string& name() const;

  const std::string& meta_id() const;
  const std::vector<Term>& args() const;

  const Operator& op() const;
  const OperatorRef& op_ref() const;
  const std::string& tag() const;
  bool has_tag(std::string_view tag) const;
  const std::vector<Term>& children() const;
  const Term& child(std::size_t i) const { return children().at(i); }

  const std::optional<TypeAnnotation>& annotation() const;

  // Same node with replaced children (operators) or arguments (metas).
  Term with_children(std::vector<Term> children) const;
  Term with_annotation(std::optional<TypeAnnotation> annotation) const;

  bool same_node(const Term& other) const { return node_ == other.node_; }

  // Cached on construction, annotations included: the smallest depth at
  // which the term is closed, and whether holes or metavariables occur.
  std::size_t bound_span() const;
  bool has_holes() const;
  bool has_metas() const;

  // Structural equality, annotations included.
  friend bool operator==(const Term& a, const Term& b);

 public:
  struct Node;
  struct Summary;

 private:
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

inline TypeAnnotation TypeAnnotation::of(Term type) {
  return TypeAnnotation(std::make_shared<const Term>(std::move(type)));
}

inline const Term& TypeAnnotation::type() const {
  if (!type_) throw MalformedTerm("the universe annotation has no type term");
  return *type_;
}

inline bool operator==(const TypeAnnotation& a, const TypeAnnotation& b) {
  if (a.is_universe() || b.is_universe()) {
    return a.is_universe() && b.is_universe();
  }
  return *a.type_ == *b.type_;
}

// Equality that ignores type annotations everywhere.
bool equal_untyped(const Term& a, const Term& b);

/// Rebuilds `t`, replacing every variable by `on_var(var, depth)`, where
/// depth counts the binders between the root of `t` and the variable.
/// Annotations are traversed at the depth of the node they annotate.
using VarMapper = std::function<Term(const Term& var, std::size_t depth)>;
Term map_vars(const Term& t, const VarMapper& on_var, std::size_t depth = 0);

// Shifts every Bound(k) with k >= cutoff (at the root) up by `by`.
Term weaken(const Term& t, std::size_t by = 1, std::size_t cutoff = 0);

// Removes binder `cutoff` from the context: indices above it move down by
// one. Returns nullopt when the removed variable occurs.
std::optional<Term> strengthen(const Term& t, std::size_t cutoff = 0);

// Does Bound(index), as seen from the root, occur in t?
bool occurs_bound(const Term& t, std::size_t index);

// Substitutes `arg` for the innermost bound variable of a scope body.
Term instantiate(const Term& body, const Term& arg);

// Replaces Hole(i) by assign[i]. Throws MissingAssignment for holes past
// the end of `assign`.
Term instantiate_many(std::span<const Term> assign, const Term& body);

using FreeEnv = std::map<std::string, Term>;
Term substitute_free(const FreeEnv& env, const Term& t);

/// Bottom-up rewrite of every operator node. `phi` receives the node with
/// its children (and annotation) already rewritten.
using NodeRewriter = std::function<Term(const Term& node)>;
Term trans(const NodeRewriter& phi, const Term& t);

// Drops every type annotation.
Term erase_annotations(const Term& t);

enum class HolePolicy { Forbid, Allow };

/// True iff every bound index is below the depth at its position, every
/// operator node agrees with `sig`, absent children sit only in optional
/// slots, and (under HolePolicy::Forbid) no hole occurs. With
/// HolePolicy::Allow, holes must be below `hole_arity`.
bool well_scoped(const Signature& sig, const Term& t, std::size_t depth,
                 HolePolicy holes = HolePolicy::Forbid,
                 std::size_t hole_arity = 0);

// Scope check without the signature conformance part.
bool bound_within(const Term& t, std::size_t depth);

std::set<std::string> free_names(const Term& t);
std::set<std::string> metas_of(const Term& t);
bool mentions_meta(const Term& t, const std::string& id);

// Number of operator nodes, annotations excluded.
std::size_t op_count(const Term& t);

}  // namespace soas

#endif  // SOAS_TERM_HPP
