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

#include "soas/unification.hpp"

#include <atomic>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>

namespace soas {

ConstraintClass classify(const Constraint& c) {
  const bool l = c.lhs.is_meta();
  const bool r = c.rhs.is_meta();
  if (l && r) return ConstraintClass::FlexFlex;
  if (l || r) return ConstraintClass::FlexRigid;
  return ConstraintClass::RigidRigid;
}

namespace {

// Guess skeleton for an n-ary metavariable: the guessed operator with a
// fresh metavariable in every slot. Scope slots pass the new bound variable
// as the first parameter.
MetaAbs guess_skeleton(const OperatorRef& op, std::size_t arity,
                       FreshSupply& supply) {
  std::vector<Term> children;
  for (auto kind : op->slots) {
    switch (kind) {
      case SlotKind::Term:
        children.push_back(fresh_meta_app(supply, hole_params(arity)));
        break;
      case SlotKind::Scope: {
        std::vector<Term> args{Term::bound(0)};
        for (auto& h : hole_params(arity)) args.push_back(std::move(h));
        children.push_back(fresh_meta_app(supply, std::move(args)));
        break;
      }
      case SlotKind::OptionalTerm:
        children.emplace_back();
        break;
    }
  }
  return MetaAbs{arity, Term::op(op, std::move(children))};
}

struct Guess {
  std::string meta;
  MetaAbs abs;
};

std::optional<Guess> find_guess(const Signature& sig, const Term& t,
                                FreshSupply& supply) {
  if (t.is_op()) {
    for (std::size_t i = 0; i < t.children().size(); ++i) {
      const Term& c = t.child(i);
      if (!c.is_meta()) continue;
      const auto& options = sig.guesses(t.tag(), i);
      if (options.empty()) continue;
      return Guess{c.meta_id(),
                   guess_skeleton(options.front(), c.args().size(), supply)};
    }
    for (const auto& c : t.children()) {
      if (auto g = find_guess(sig, c, supply)) return g;
    }
  } else if (t.is_meta()) {
    for (const auto& a : t.args()) {
      if (auto g = find_guess(sig, a, supply)) return g;
    }
  }
  return std::nullopt;
}

// Counts nodes until `limit` is passed.
bool exceeds_size(const Term& t, std::size_t limit) {
  std::size_t seen = 0;
  std::vector<const Term*> todo{&t};
  while (!todo.empty()) {
    const Term* cur = todo.back();
    todo.pop_back();
    if (cur->absent()) continue;
    if (++seen > limit) return true;
    if (cur->is_var()) continue;
    for (const auto& c : cur->is_meta() ? cur->args() : cur->children()) {
      todo.push_back(&c);
    }
  }
  return false;
}

void check_size(const Term& t, const SearchConfig& cfg) {
  if (exceeds_size(t, cfg.size_limit)) {
    throw FuelExhausted("constraint grew beyond " +
                        std::to_string(cfg.size_limit) + " nodes");
  }
}

void simplify_into(const Theory& theory, const Constraint& c,
                   MetaSubstitution& s, const SearchConfig& cfg,
                   FreshSupply& supply, std::size_t& guesses,
                   std::vector<Constraint>& out) {
  std::vector<Constraint> work{c};
  while (!work.empty()) {
    Constraint e = std::move(work.back());
    work.pop_back();
    Term lhs = apply_substs(s, e.lhs);
    Term rhs = apply_substs(s, e.rhs);
    for (;;) {
      lhs = reduce(theory.reducer, lhs, cfg.reduce_fuel);
      rhs = reduce(theory.reducer, rhs, cfg.reduce_fuel);
      check_size(lhs, cfg);
      check_size(rhs, cfg);
      auto g = find_guess(theory.signature, lhs, supply);
      if (!g) g = find_guess(theory.signature, rhs, supply);
      if (!g) break;
      if (++guesses > cfg.guess_fuel) {
        throw FuelExhausted("more than " + std::to_string(cfg.guess_fuel) +
                            " structural guesses in one simplification");
      }
      MetaSubstitution one;
      one.insert(g->meta, g->abs);
      s = extend_substs(s, one);
      lhs = apply_substs(one, lhs);
      rhs = apply_substs(one, rhs);
    }
    if (equal_untyped(lhs, rhs)) continue;
    Constraint here{e.binders, lhs, rhs};
    if (lhs.is_meta() || rhs.is_meta()) {
      out.push_back(std::move(here));
      continue;
    }
    auto matched = zip_match(theory.signature, lhs, rhs);
    if (!matched) throw Clash(std::move(here), "rigid heads do not match");
    for (auto it = matched->slots.rbegin(); it != matched->slots.rend(); ++it) {
      if (it->left.absent() && it->right.absent()) continue;
      const std::size_t extra = it->kind == SlotKind::Scope ? 1 : 0;
      work.push_back(Constraint{e.binders + extra, it->left, it->right});
    }
  }
}

}  // namespace

Simplified simplify(const Theory& theory, const Constraint& c,
                    const MetaSubstitution& s, const SearchConfig& cfg,
                    FreshSupply& supply) {
  Simplified out{{}, s};
  std::size_t guesses = 0;
  simplify_into(theory, c, out.substs, cfg, supply, guesses, out.constraints);
  return out;
}

Simplified simplify_all(const Theory& theory, std::vector<Constraint> cs,
                        MetaSubstitution s, const SearchConfig& cfg,
                        FreshSupply& supply) {
  std::size_t guesses = 0;
  for (;;) {
    const std::size_t before = s.size();
    std::vector<Constraint> out;
    for (const auto& c : cs) {
      simplify_into(theory, c, s, cfg, supply, guesses, out);
    }
    // A guess fired somewhere: constraints simplified before it are stale.
    if (s.size() == before) return Simplified{std::move(out), std::move(s)};
    cs = std::move(out);
  }
}

Term head_of(const Signature& sig, const Term& t) {
  Term cur = t;
  while (cur.is_op()) {
    auto slot = sig.head_slot(cur.tag());
    if (!slot || cur.child(*slot).absent()) break;
    cur = cur.child(*slot);
  }
  return cur;
}

std::size_t head_spine_length(const Signature& sig, const Term& t) {
  std::size_t n = 0;
  Term cur = t;
  while (cur.is_op()) {
    auto slot = sig.head_slot(cur.tag());
    if (!slot || cur.child(*slot).absent()) break;
    cur = cur.child(*slot);
    ++n;
  }
  return n;
}

namespace {

// Candidate templates use metavariables with an empty id as placeholders;
// each is replaced by a fresh id when the candidate is handed out.
Term placeholder(std::vector<Term> args) {
  return Term::meta(std::string(), std::move(args));
}

Term materialize(const Term& t, FreshSupply& supply) {
  switch (t.kind()) {
    case Term::Kind::Absent:
    case Term::Kind::Var:
      return t;
    case Term::Kind::Meta: {
      std::vector<Term> args;
      for (const auto& a : t.args()) args.push_back(materialize(a, supply));
      std::string id = t.meta_id().empty() ? supply.fresh() : t.meta_id();
      return Term::meta(std::move(id), std::move(args), t.annotation());
    }
    case Term::Kind::Op: {
      std::vector<Term> children;
      for (const auto& c : t.children()) children.push_back(materialize(c, supply));
      return t.with_children(std::move(children));
    }
  }
  return t;
}

constexpr std::size_t kMaxLevelSize = 4096;

}  // namespace

CandidateStream::CandidateStream(const Theory& theory,
                                 const Constraint& flex_rigid,
                                 FreshSupply& supply)
    : theory_(theory), supply_(supply) {
  const bool left_flex = flex_rigid.lhs.is_meta();
  const Term& flex = left_flex ? flex_rigid.lhs : flex_rigid.rhs;
  const Term& rigid = left_flex ? flex_rigid.rhs : flex_rigid.lhs;
  meta_ = flex.meta_id();
  arity_ = flex.args().size();

  max_depth_ = head_spine_length(theory.signature, rigid);
  for (const auto& a : flex.args()) max_depth_ += op_count(a);

  families_.push_back(hole_params(arity_));

  std::vector<Term> imitation;
  Term head = head_of(theory.signature, rigid);
  // Imitating a quantified variable only yields a fresh metavariable that
  // restates the same problem.
  if (!head.is_bound()) {
    Term body = map_vars(head, [&](const Term& v, std::size_t depth) {
      if (v.is_bound() && v.index() >= depth) {
        return placeholder(hole_params(arity_));
      }
      return v;
    });
    if (!mentions_meta(body, meta_)) imitation.push_back(std::move(body));
  }
  families_.push_back(std::move(imitation));
  current_ = families_.front();
}

MetaAbs CandidateStream::expand(const Shape& shape, const Term& head) {
  std::vector<Term> children;
  for (std::size_t i = 0; i < shape.slots.size(); ++i) {
    const SlotKind kind = shape.op->slots[i];
    if (shape.slots[i] == IsHead::HasHead) {
      children.push_back(kind == SlotKind::Scope ? weaken(head) : head);
      continue;
    }
    switch (kind) {
      case SlotKind::Term:
        children.push_back(placeholder(hole_params(arity_)));
        break;
      case SlotKind::Scope: {
        std::vector<Term> args{Term::bound(0)};
        for (auto& h : hole_params(arity_)) args.push_back(std::move(h));
        children.push_back(placeholder(std::move(args)));
        break;
      }
      case SlotKind::OptionalTerm:
        children.emplace_back();
        break;
    }
  }
  return MetaAbs{arity_, Term::op(shape.op, std::move(children))};
}

bool CandidateStream::advance_level() {
  const auto& shapes = theory_.signature.shapes();
  if (level_ < max_depth_ && !current_.empty() && !shapes.empty() &&
      current_.size() * shapes.size() <= kMaxLevelSize) {
    std::vector<Term> next;
    for (const auto& shape : shapes) {
      for (const auto& head : current_) next.push_back(expand(shape, head).body);
    }
    current_ = std::move(next);
    ++level_;
    pos_ = 0;
    return true;
  }
  if (family_ + 1 < families_.size()) {
    ++family_;
    level_ = 0;
    current_ = families_[family_];
    pos_ = 0;
    return true;
  }
  return false;
}

std::optional<MetaAbs> CandidateStream::next() {
  for (;;) {
    if (pos_ < current_.size()) {
      return MetaAbs{arity_, materialize(current_[pos_++], supply_)};
    }
    if (!advance_level()) return std::nullopt;
  }
}

namespace audit {
namespace {
std::atomic<bool> enabled{false};
std::atomic<std::size_t> checked_count{0};
std::atomic<std::size_t> violation_count{0};
}  // namespace

void enable(bool on) { enabled = on; }
std::size_t checked() { return checked_count; }
std::size_t violations() { return violation_count; }
}  // namespace audit

namespace {

// Nullary metas reachable from the root of `t` through operators that are
// never rewritten and always compared slot by slot.
void rigid_nullary(const Theory& theory, const Term& t, std::set<std::string>& out) {
  if (!t.is_op() || !t.has_metas() || theory.reducer.handles(t.tag()) ||
      theory.signature.match_override(t.tag())) {
    return;
  }
  for (const auto& c : t.children()) {
    if (c.is_meta() && c.args().empty()) out.insert(c.meta_id());
    rigid_nullary(theory, c, out);
  }
}

// ?m[] =?= C[?n[]] with C inert makes any solution of ?m strictly larger
// than one of ?n, and ?a[] =?= ?b[] makes them equal. A cycle through these
// relations has no solution. Returns the constraint closing one, if any.
std::optional<Constraint> nullary_cycle(const Theory& theory,
                                        const std::vector<Constraint>& cs) {
  std::map<std::string, std::string> parent;
  std::function<std::string(const std::string&)> find = [&](const std::string& x) {
    auto it = parent.find(x);
    if (it == parent.end() || it->second == x) return x;
    return it->second = find(it->second);
  };
  auto nullary = [](const Term& t) { return t.is_meta() && t.args().empty(); };
  for (const auto& c : cs) {
    if (nullary(c.lhs) && nullary(c.rhs)) parent[find(c.lhs.meta_id())] = find(c.rhs.meta_id());
  }
  std::map<std::string, std::vector<std::pair<std::string, std::size_t>>> edges;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (const auto* side : {&cs[i].lhs, &cs[i].rhs}) {
      const Term& other = side == &cs[i].lhs ? cs[i].rhs : cs[i].lhs;
      if (!nullary(*side)) continue;
      std::set<std::string> inner;
      rigid_nullary(theory, other, inner);
      for (const auto& n : inner) edges[find(side->meta_id())].push_back({find(n), i});
    }
  }
  std::map<std::string, int> state;  // 1 on the stack, 2 done
  std::optional<Constraint> found;
  std::function<void(const std::string&)> visit = [&](const std::string& v) {
    state[v] = 1;
    for (const auto& [w, i] : edges[v]) {
      if (found) return;
      if (state[w] == 1) {
        found = cs[i];
      } else if (state[w] == 0) {
        visit(w);
      }
    }
    state[v] = 2;
  };
  for (const auto& [v, out] : edges) {
    if (!found && state[v] == 0) visit(v);
  }
  return found;
}

class Search {
 public:
  Search(const Theory& theory, const SearchConfig& cfg, FreshSupply& supply)
      : theory_(theory), cfg_(cfg), supply_(supply) {}

  // Iterative deepening over the number of nested candidate choices, so a
  // shallow solution is found before any deep branch is explored.
  UnifyResult solve(const std::vector<Constraint>& cs, const MetaSubstitution& s) {
    for (std::size_t limit = 0;; ++limit) {
      cut_ = false;
      UnifyResult r = run(cs, s, limit);
      if (std::holds_alternative<Solution>(r) || out_of_fuel_ || !cut_) return r;
    }
  }

 private:
  UnifyResult run(std::vector<Constraint> cs, MetaSubstitution s,
                  std::size_t depth_left) {
    Simplified sm;
    try {
      sm = simplify_all(theory_, std::move(cs), std::move(s), cfg_, supply_);
    } catch (const Clash& e) {
      return Failure{e.constraint, e.what()};
    } catch (const FuelExhausted& e) {
      return Undetermined{e.what()};
    }

    if (auto c = nullary_cycle(theory_, sm.constraints)) {
      return Failure{*c, "metavariable occurs in its own solution"};
    }

    std::size_t idx = 0;
    while (idx < sm.constraints.size() &&
           classify(sm.constraints[idx]) != ConstraintClass::FlexRigid) {
      ++idx;
    }
    if (idx == sm.constraints.size()) {
      return Solution{std::move(sm.substs), std::move(sm.constraints)};
    }

    const Constraint chosen = sm.constraints[idx];
    if (depth_left == 0) {
      cut_ = true;
      return Undetermined{"search depth limit reached"};
    }
    CandidateStream stream(theory_, chosen, supply_);
    std::optional<Undetermined> unknown;
    while (auto candidate = stream.next()) {
      if (++attempts_ > cfg_.fuel) {
        out_of_fuel_ = true;
        return Undetermined{"candidate budget of " + std::to_string(cfg_.fuel) +
                            " exhausted"};
      }
      MetaSubstitution one;
      one.insert(stream.meta(), std::move(*candidate));
      // Each branch works on its own copies of the constraints and the
      // substitution; siblings never see its changes.
      UnifyResult r =
          run(sm.constraints, extend_substs(sm.substs, one), depth_left - 1);
      if (std::holds_alternative<Solution>(r)) return r;
      if (auto* u = std::get_if<Undetermined>(&r)) {
        if (out_of_fuel_) return r;
        unknown = *u;
      }
    }
    if (unknown) return *unknown;
    return Failure{chosen, "no candidate solution for ?" + stream.meta()};
  }

  const Theory& theory_;
  const SearchConfig& cfg_;
  FreshSupply& supply_;
  std::size_t attempts_ = 0;
  bool out_of_fuel_ = false;
  bool cut_ = false;
};

}  // namespace

UnifyResult unify(const Theory& theory, const MetaSubstitution& substs,
                  std::vector<Constraint> cs, const SearchConfig& cfg,
                  FreshSupply& supply) {
  for (const auto& c : cs) {
    supply.reserve_all(c.lhs);
    supply.reserve_all(c.rhs);
  }
  for (const auto& [id, abs] : substs) {
    supply.reserve(id);
    supply.reserve_all(abs.body);
  }
  Search search(theory, cfg, supply);
  UnifyResult result = search.solve(cs, substs);
  if (audit::enabled) {
    if (const auto* sol = std::get_if<Solution>(&result)) {
      ++audit::checked_count;
      if (!verify_solution(theory, cs, *sol, cfg)) ++audit::violation_count;
    }
  }
  return result;
}

UnifyResult unify(const Theory& theory, std::vector<Constraint> cs,
                  const SearchConfig& cfg) {
  FreshSupply supply;
  return unify(theory, MetaSubstitution{}, std::move(cs), cfg, supply);
}

bool verify_solution(const Theory& theory,
                     const std::vector<Constraint>& problem,
                     const Solution& solution, const SearchConfig& cfg) {
  FreshSupply scratch("verify");
  for (const auto& [id, abs] : solution.substs) scratch.reserve(id);
  try {
    Simplified sm =
        simplify_all(theory, problem, solution.substs, cfg, scratch);
    for (const auto& c : sm.constraints) {
      if (classify(c) != ConstraintClass::FlexFlex) return false;
    }
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace soas
