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

#include "soas/typecheck.hpp"

#include <set>
#include <utility>

#include "soas/reduction.hpp"

namespace soas {

const char* to_string(TypeErrorKind kind) {
  switch (kind) {
    case TypeErrorKind::UnificationFailure: return "unification failure";
    case TypeErrorKind::DependencyEscape: return "dependency escape";
    case TypeErrorKind::ArityMismatch: return "arity mismatch";
    case TypeErrorKind::FuelExhausted: return "fuel exhausted";
    case TypeErrorKind::Unsupported: return "unsupported";
  }
  return "type error";
}

Checker::Checker(const TypeSystem& system, SearchConfig cfg)
    : system_(system), cfg_(cfg) {}

Term Checker::infer(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Absent:
      return t;
    case Term::Kind::Var:
      return infer_var(t);
    case Term::Kind::Meta:
      return infer_meta(t);
    case Term::Kind::Op:
      if (!system_.theory.signature.has(t.tag())) {
        throw TypeError(TypeErrorKind::Unsupported,
                        "operator " + t.tag() + " is not part of " +
                            system_.theory.signature.name(),
                        std::nullopt, t, depth());
      }
      return system_.infer_node(*this, t);
  }
  return t;
}

Term Checker::infer_var(const Term& t) {
  switch (t.var_kind()) {
    case VarKind::Bound:
      if (t.index() >= depth()) {
        throw MalformedTerm("bound variable " + std::to_string(t.index()) +
                            " escapes its scope");
      }
      return t;
    case VarKind::Free:
      if (!info_.free_var_types.count(t.name())) {
        const std::string id = info_.supply.fresh();
        info_.meta_var_types.emplace(id, TypeAnnotation::universe());
        info_.free_var_types.emplace(t.name(),
                                     TypeAnnotation::of(Term::meta(id, {})));
      }
      return t;
    case VarKind::Hole:
      break;
  }
  throw TypeError(TypeErrorKind::Unsupported,
                  "holes only occur in metavariable bodies", std::nullopt, t,
                  depth());
}

Term Checker::infer_meta(const Term& t) {
  std::vector<Term> args;
  std::vector<Term> plain;
  for (const auto& a : t.args()) {
    args.push_back(infer(a));
    plain.push_back(erase_annotations(a));
  }
  auto it = info_.meta_var_types.find(t.meta_id());
  if (it == info_.meta_var_types.end()) {
    const std::string id = info_.supply.fresh();
    info_.meta_var_types.emplace(id, TypeAnnotation::universe());
    it = info_.meta_var_types
             .emplace(t.meta_id(), TypeAnnotation::of(Term::meta(
                                       id, hole_params(t.args().size()))))
             .first;
  }
  TypeAnnotation ann = it->second;
  if (!ann.is_universe()) {
    ann = TypeAnnotation::of(clarify(instantiate_many(plain, ann.type())));
  }
  return Term::meta(t.meta_id(), std::move(args), std::move(ann));
}

Term Checker::check(const Term& t, const Term& ty) {
  Term ty_annotated = infer(ty);
  should_have_type(ty_annotated, TypeAnnotation::universe());
  Term t_annotated = infer(t);
  should_have_type(t_annotated,
                   TypeAnnotation::of(erase_annotations(clarify(ty_annotated))));
  return clarify(t_annotated);
}

void Checker::should_have_type(const Term& annotated,
                               const TypeAnnotation& expected) {
  const TypeAnnotation actual = type_of(annotated);
  if (actual.is_universe() && expected.is_universe()) return;
  unify_with_expected(type_term(actual), type_term(expected));
}

void Checker::unify_with_expected(const Term& actual, const Term& expected) {
  Constraint c{depth(), erase_annotations(clarify(actual)),
               erase_annotations(clarify(expected))};
  std::vector<Constraint> cs{c};
  cs.insert(cs.end(), info_.constraints.begin(), info_.constraints.end());
  UnifyResult r =
      unify(system_.theory, info_.meta_var_substs, std::move(cs), cfg_,
            info_.supply);
  if (auto* sol = std::get_if<Solution>(&r)) {
    info_.meta_var_substs = std::move(sol->substs);
    info_.constraints = std::move(sol->residual);
    clarify_context();
    return;
  }
  if (auto* fail = std::get_if<Failure>(&r)) {
    throw TypeError(TypeErrorKind::UnificationFailure,
                    "type mismatch: " + fail->reason, c, Term{}, depth());
  }
  throw TypeError(TypeErrorKind::FuelExhausted,
                  std::get<Undetermined>(r).reason, c, Term{}, depth());
}

TypeAnnotation Checker::type_of(const Term& annotated) const {
  if (annotated.is_bound() && annotated.index() < depth()) {
    const std::size_t k = annotated.index();
    const TypeAnnotation& stored = info_.bound_var_types[depth() - 1 - k];
    if (stored.is_universe()) return stored;
    return TypeAnnotation::of(clarify(weaken(stored.type(), k + 1)));
  }
  if (annotated.is_free()) {
    auto it = info_.free_var_types.find(annotated.name());
    if (it != info_.free_var_types.end()) return clarify(it->second);
  }
  const auto& ann = annotated.annotation();
  if (!ann) {
    throw TypeError(TypeErrorKind::Unsupported, "term has no inferred type",
                    std::nullopt, annotated, depth());
  }
  return *ann;
}

Term Checker::type_term(const TypeAnnotation& ann) const {
  if (ann.is_universe()) return system_.universe;
  return ann.type();
}

namespace {

// Finds where Bound(0) of the root occurs. Occurrences inside metavariable
// arguments are recorded per argument position; others set `rigid`.
void scan_escape(const Term& t, std::size_t d,
                 std::map<std::string, std::pair<std::size_t, std::set<std::size_t>>>&
                     prune,
                 bool& rigid) {
  switch (t.kind()) {
    case Term::Kind::Absent:
      return;
    case Term::Kind::Var:
      if (t.is_bound() && t.index() == d) rigid = true;
      return;
    case Term::Kind::Meta:
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (occurs_bound(t.args()[i], d)) {
          auto& entry = prune[t.meta_id()];
          entry.first = t.args().size();
          entry.second.insert(i);
        }
      }
      return;
    case Term::Kind::Op:
      for (std::size_t i = 0; i < t.children().size(); ++i) {
        const bool scope = t.op().slots[i] == SlotKind::Scope;
        scan_escape(t.child(i), d + (scope ? 1 : 0), prune, rigid);
      }
      return;
  }
}

}  // namespace

Term Checker::non_dep(const Term& ty) {
  Term t = erase_annotations(clarify(ty));
  if (auto s = strengthen(t)) return *s;

  std::map<std::string, std::pair<std::size_t, std::set<std::size_t>>> prune;
  bool rigid = false;
  scan_escape(t, 0, prune, rigid);
  if (rigid) {
    throw TypeError(TypeErrorKind::DependencyEscape,
                    "type depends on a variable leaving scope", std::nullopt,
                    t, depth());
  }
  MetaSubstitution entries;
  for (const auto& [id, info] : prune) {
    const auto& [arity, drop] = info;
    std::vector<Term> kept;
    for (std::size_t i = 0; i < arity; ++i) {
      if (!drop.count(i)) kept.push_back(Term::hole(i));
    }
    const std::string pruned = info_.supply.fresh();
    auto typed = info_.meta_var_types.find(id);
    if (typed != info_.meta_var_types.end() && typed->second.is_universe()) {
      info_.meta_var_types.emplace(pruned, TypeAnnotation::universe());
    }
    entries.insert(id, MetaAbs{arity, Term::meta(pruned, std::move(kept))});
  }
  info_.meta_var_substs = extend_substs(info_.meta_var_substs, entries);
  clarify_context();
  t = clarify(t);
  if (auto s = strengthen(t)) return *s;
  throw TypeError(TypeErrorKind::DependencyEscape,
                  "type depends on a variable leaving scope", std::nullopt, t,
                  depth());
}

Term Checker::fresh_type_meta_var() {
  std::vector<Term> args;
  for (std::size_t i = depth(); i > 0; --i) args.push_back(Term::bound(i - 1));
  const std::string id = info_.supply.fresh();
  info_.meta_var_types.emplace(id, TypeAnnotation::universe());
  return Term::meta(id, std::move(args), TypeAnnotation::universe());
}

Term Checker::clarify(const Term& t) const {
  if (t.absent() || info_.meta_var_substs.empty()) return t;
  return apply_substs(info_.meta_var_substs, t);
}

TypeAnnotation Checker::clarify(const TypeAnnotation& ann) const {
  if (ann.is_universe()) return ann;
  return TypeAnnotation::of(clarify(ann.type()));
}

Term Checker::whnf(const Term& t) const {
  try {
    return reduce(system_.theory.reducer, erase_annotations(clarify(t)),
                  cfg_.reduce_fuel);
  } catch (const FuelExhausted& e) {
    throw TypeError(TypeErrorKind::FuelExhausted, e.what(), std::nullopt, t,
                    depth());
  }
}

Term Checker::first_success(const std::vector<std::function<Term()>>& options) {
  std::optional<TypeError> last;
  for (const auto& option : options) {
    TypeInfo saved = info_;
    try {
      return option();
    } catch (const TypeError& e) {
      info_ = std::move(saved);
      last = e;
    }
  }
  if (last) throw *last;
  throw TypeError(TypeErrorKind::Unsupported, "no alternatives to try");
}

void Checker::clarify_context() {
  for (auto& [name, ann] : info_.free_var_types) ann = clarify(ann);
  for (auto& ann : info_.bound_var_types) ann = clarify(ann);
  for (auto& [id, ann] : info_.meta_var_types) ann = clarify(ann);
  std::vector<Constraint> kept;
  for (auto& c : info_.constraints) {
    Constraint d{c.binders, clarify(c.lhs), clarify(c.rhs)};
    if (!equal_untyped(d.lhs, d.rhs)) kept.push_back(std::move(d));
  }
  info_.constraints = std::move(kept);
}

namespace {

Inferred finish(Checker& checker, const Term& annotated) {
  Term term = checker.clarify(annotated);
  TypeAnnotation type = checker.clarify(checker.type_of(term));
  return Inferred{std::move(term), std::move(type), checker.info()};
}

}  // namespace

Inferred infer_type(const TypeSystem& system, const Term& t,
                    const SearchConfig& cfg) {
  Checker checker(system, cfg);
  checker.info().supply.reserve_all(t);
  return finish(checker, checker.infer(t));
}

Inferred check_type(const TypeSystem& system, const Term& t, const Term& ty,
                    const SearchConfig& cfg) {
  Checker checker(system, cfg);
  checker.info().supply.reserve_all(t);
  checker.info().supply.reserve_all(ty);
  return finish(checker, checker.check(t, ty));
}

}  // namespace soas
