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

#include "soas/metavar.hpp"

#include <algorithm>
#include <map>

namespace soas {

const MetaAbs* MetaSubstitution::find(const std::string& id) const {
  auto it = entries_.find(id);
  return it == entries_.end() ? nullptr : &it->second;
}

void MetaSubstitution::insert(const std::string& id, MetaAbs abs) {
  if (mentions_meta(abs.body, id)) {
    throw ConflictingEntry("entry for ?" + id + " mentions itself");
  }
  auto [it, inserted] = entries_.emplace(id, abs);
  if (!inserted && !(it->second == abs)) {
    throw ConflictingEntry("conflicting entries for ?" + id);
  }
}

std::vector<std::string> MetaSubstitution::ids() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [id, abs] : entries_) out.push_back(id);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

namespace {

Term apply_impl(const MetaSubstitution& s, const Term& t) {
  if (!t.has_metas()) return t;
  switch (t.kind()) {
    case Term::Kind::Absent:
    case Term::Kind::Var:
      return t;
    case Term::Kind::Meta: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(apply_impl(s, a));
      if (const MetaAbs* abs = s.find(t.meta_id())) {
        if (abs->arity != args.size()) {
          throw ArityMismatch("?" + t.meta_id() + " has arity " +
                              std::to_string(abs->arity) + " but is applied to " +
                              std::to_string(args.size()) + " arguments");
        }
        // Bodies are closed over holes, so no weakening of the body itself
        // is needed; instantiate_many weakens the arguments under binders.
        return instantiate_many(args, abs->body);
      }
      auto ann = t.annotation();
      if (ann && !ann->is_universe()) {
        ann = TypeAnnotation::of(apply_impl(s, ann->type()));
      }
      return Term::meta(t.meta_id(), std::move(args), std::move(ann));
    }
    case Term::Kind::Op: {
      std::vector<Term> children;
      children.reserve(t.children().size());
      bool changed = false;
      for (const auto& c : t.children()) {
        children.push_back(apply_impl(s, c));
        changed = changed || !children.back().same_node(c);
      }
      auto ann = t.annotation();
      if (ann && !ann->is_universe()) {
        Term ty = apply_impl(s, ann->type());
        changed = changed || !ty.same_node(ann->type());
        ann = TypeAnnotation::of(std::move(ty));
      }
      if (!changed) return t;
      return Term::op(t.op_ref(), std::move(children), std::move(ann));
    }
  }
  return t;
}

}  // namespace

Term apply_substs(const MetaSubstitution& s, const Term& t) {
  if (s.empty()) return t;
  return apply_impl(s, t);
}

MetaSubstitution extend_substs(const MetaSubstitution& s,
                               const MetaSubstitution& next) {
  MetaSubstitution out;
  for (const auto& [id, abs] : s) {
    if (const MetaAbs* other = next.find(id); other && !(*other == abs)) {
      throw ConflictingEntry("conflicting entries for ?" + id);
    }
    out.insert(id, MetaAbs{abs.arity, apply_substs(next, abs.body)});
  }
  for (const auto& [id, abs] : next) {
    if (!s.contains(id)) out.insert(id, abs);
  }
  return out;
}

void FreshSupply::reserve_all(const Term& t) {
  for (const auto& id : metas_of(t)) used_.insert(id);
}

std::string FreshSupply::fresh() {
  for (;;) {
    std::string id = prefix_ + std::to_string(next_++);
    if (used_.insert(id).second) {
      ++issued_;
      return id;
    }
  }
}

Term fresh_meta_app(FreshSupply& supply, std::vector<Term> args,
                    std::optional<TypeAnnotation> annotation) {
  return Term::meta(supply.fresh(), std::move(args), std::move(annotation));
}

std::vector<Term> hole_params(std::size_t n) {
  std::vector<Term> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(Term::hole(i));
  return out;
}

namespace {

struct Renaming {
  std::map<std::string, std::string> forward;
  std::map<std::string, std::string> backward;

  bool link(const std::string& a, const std::string& b) {
    auto f = forward.find(a);
    auto g = backward.find(b);
    if (f == forward.end() && g == backward.end()) {
      forward.emplace(a, b);
      backward.emplace(b, a);
      return true;
    }
    return f != forward.end() && g != backward.end() && f->second == b &&
           g->second == a;
  }
};

bool renamed_equal(const Term& a, const Term& b, Renaming& r) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Absent:
      return true;
    case Term::Kind::Var:
      return equal_untyped(a, b);
    case Term::Kind::Meta:
      if (a.args().size() != b.args().size()) return false;
      if (!r.link(a.meta_id(), b.meta_id())) return false;
      for (std::size_t i = 0; i < a.args().size(); ++i) {
        if (!renamed_equal(a.args()[i], b.args()[i], r)) return false;
      }
      return true;
    case Term::Kind::Op:
      if (a.tag() != b.tag() || a.children().size() != b.children().size()) {
        return false;
      }
      for (std::size_t i = 0; i < a.children().size(); ++i) {
        if (!renamed_equal(a.child(i), b.child(i), r)) return false;
      }
      return true;
  }
  return false;
}

}  // namespace

bool equal_up_to_meta_renaming(const Term& a, const Term& b) {
  Renaming r;
  return renamed_equal(a, b, r);
}

bool equal_up_to_meta_renaming(const std::vector<Term>& a,
                               const std::vector<Term>& b) {
  if (a.size() != b.size()) return false;
  Renaming r;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!renamed_equal(a[i], b[i], r)) return false;
  }
  return true;
}

}  // namespace soas
