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

#ifndef SOAS_UNIFICATION_HPP
#define SOAS_UNIFICATION_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "soas/metavar.hpp"
#include "soas/reduction.hpp"
#include "soas/signature.hpp"
#include "soas/term.hpp"

namespace soas {

// What unification needs to know about a language.
struct Theory {
  Signature signature;
  Reducer reducer;
};

/// lhs =?= rhs under `binders` universally quantified variables. A chain of
/// ForAll wrappers is kept as a count: both sides are well-scoped at depth
/// `binders`.
struct Constraint {
  std::size_t binders = 0;
  Term lhs;
  Term rhs;

  static Constraint eq(Term lhs, Term rhs) { return {0, std::move(lhs), std::move(rhs)}; }
  Constraint for_all() const { return {binders + 1, lhs, rhs}; }
};

enum class ConstraintClass { FlexFlex, FlexRigid, RigidRigid };
ConstraintClass classify(const Constraint& c);

struct SearchConfig {
  std::size_t fuel = 1000;        // candidate applications per unify call
  std::size_t guess_fuel = 100;   // structural guesses per simplification
  std::size_t reduce_fuel = kDefaultReduceFuel;
  // Largest constraint side, in nodes, that simplification will work on.
  std::size_t size_limit = 5000;
};

// Two rigid heads that cannot be matched.
class Clash : public Error {
 public:
  Clash(Constraint c, const std::string& what)
      : Error(what), constraint(std::move(c)) {}
  Constraint constraint;
};

struct Simplified {
  std::vector<Constraint> constraints;  // each FlexFlex or FlexRigid
  MetaSubstitution substs;
};

/// Reduces both sides, fires structural guesses for metavariables sitting in
/// guessable slots, then decomposes matching rigid heads. `s` is applied
/// first and extended with the guesses. Throws Clash or FuelExhausted.
Simplified simplify(const Theory& theory, const Constraint& c,
                    const MetaSubstitution& s, const SearchConfig& cfg,
                    FreshSupply& supply);

// Simplifies a whole list until no further guess applies.
Simplified simplify_all(const Theory& theory, std::vector<Constraint> cs,
                        MetaSubstitution s, const SearchConfig& cfg,
                        FreshSupply& supply);

// Follows HasHead slots from the root as far as possible.
Term head_of(const Signature& sig, const Term& t);

// Number of head slots followed by head_of.
std::size_t head_spine_length(const Signature& sig, const Term& t);

/// Lazily enumerated candidate solutions ?M[x1..xn] := T for one flex-rigid
/// constraint. Order: projections, shapes built over projections, then
/// imitation of the rigid head, then shapes built over the imitation.
/// Shape nesting is bounded by the rigid side's head spine plus the number
/// of operator nodes in the flexible side's arguments.
class CandidateStream {
 public:
  CandidateStream(const Theory& theory, const Constraint& flex_rigid,
                  FreshSupply& supply);

  const std::string& meta() const { return meta_; }
  std::size_t arity() const { return arity_; }

  // Next candidate, or nullopt when the stream is exhausted.
  std::optional<MetaAbs> next();

 private:
  bool advance_level();
  MetaAbs expand(const Shape& shape, const Term& head);

  const Theory& theory_;
  FreshSupply& supply_;
  std::string meta_;
  std::size_t arity_ = 0;
  std::size_t max_depth_ = 0;
  std::vector<std::vector<Term>> families_;
  std::size_t family_ = 0;
  std::size_t level_ = 0;
  std::vector<Term> current_;
  std::size_t pos_ = 0;
};

struct Solution {
  MetaSubstitution substs;
  std::vector<Constraint> residual;  // all FlexFlex
};

struct Failure {
  Constraint culprit;
  std::string reason;
};

struct Undetermined {
  std::string reason;
};

using UnifyResult = std::variant<Solution, Failure, Undetermined>;

/// Higher-order preunification. Solves every flex-rigid constraint by trying
/// candidates depth-first with backtracking and returns the flex-flex
/// remainder unsolved.
UnifyResult unify(const Theory& theory, const MetaSubstitution& substs,
                  std::vector<Constraint> cs, const SearchConfig& cfg,
                  FreshSupply& supply);

// Convenience overload with a private supply that avoids the problem's ids.
UnifyResult unify(const Theory& theory, std::vector<Constraint> cs,
                  const SearchConfig& cfg = {});

/// Applies `solution` to `problem` and re-simplifies. True iff nothing but
/// flex-flex constraints remain.
bool verify_solution(const Theory& theory,
                     const std::vector<Constraint>& problem,
                     const Solution& solution, const SearchConfig& cfg = {});

// Counts solutions re-checked by verify_solution from inside unify once
// enabled. Used by the test suites.
namespace audit {
void enable(bool on = true);
std::size_t checked();
std::size_t violations();
}  // namespace audit

}  // namespace soas

#endif  // SOAS_UNIFICATION_HPP
