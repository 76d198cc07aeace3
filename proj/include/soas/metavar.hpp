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

#ifndef SOAS_METAVAR_HPP
#define SOAS_METAVAR_HPP

#include <cstddef>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "soas/term.hpp"

namespace soas {

/// Body of a metavariable solution: `arity` parameters referenced as
/// Hole(0) .. Hole(arity - 1), no bound variables at the top.
struct MetaAbs {
  std::size_t arity = 0;
  Term body;

  friend bool operator==(const MetaAbs& a, const MetaAbs& b) {
    return a.arity == b.arity && a.body == b.body;
  }
};

/// Simultaneous metavariable substitution. Entries never mention their
/// own metavariable.
class MetaSubstitution {
 public:
  MetaSubstitution() = default;

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  bool contains(const std::string& id) const { return entries_.count(id) != 0; }
  const MetaAbs* find(const std::string& id) const;

  // Adds an entry. An identical existing entry is accepted; a different one
  // throws ConflictingEntry. A body mentioning `id` throws ConflictingEntry.
  void insert(const std::string& id, MetaAbs abs);

  // Ids in a stable order (shorter first, then lexicographic), so that
  // "m2" precedes "m10".
  std::vector<std::string> ids() const;

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  friend bool operator==(const MetaSubstitution& a, const MetaSubstitution& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::unordered_map<std::string, MetaAbs> entries_;
};

// Substitutes every solved metavariable application in `t`. Throws
// ArityMismatch when an application disagrees with its entry's arity.
Term apply_substs(const MetaSubstitution& s, const Term& t);

// The substitution equivalent to applying `s` and then `next`.
MetaSubstitution extend_substs(const MetaSubstitution& s,
                               const MetaSubstitution& next);

/// Source of metavariable ids that were never issued before and never
/// clash with reserved (user-chosen) ids.
class FreshSupply {
 public:
  explicit FreshSupply(std::string prefix = "m") : prefix_(std::move(prefix)) {}

  void reserve(const std::string& id) { used_.insert(id); }
  void reserve_all(const Term& t);
  std::string fresh();
  std::size_t issued() const { return issued_; }

 private:
  std::string prefix_;
  std::size_t next_ = 1;
  std::size_t issued_ = 0;
  std::unordered_set<std::string> used_;
};

// MetaApp(fresh id, args).
Term fresh_meta_app(FreshSupply& supply, std::vector<Term> args,
                    std::optional<TypeAnnotation> annotation = std::nullopt);

// Holes 0 .. n-1, the parameter list of an n-ary metavariable body.
std::vector<Term> hole_params(std::size_t n);

// Structural equality up to a bijective renaming of metavariable ids.
// Annotations are ignored.
bool equal_up_to_meta_renaming(const Term& a, const Term& b);

// Same, threading one renaming through several pairs.
bool equal_up_to_meta_renaming(const std::vector<Term>& a,
                               const std::vector<Term>& b);

}  // namespace soas

#endif  // SOAS_METAVAR_HPP
