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

#include "soas/term.hpp"

#include <cassert>
#include <utility>

#include "soas/signature.hpp"

namespace soas {

struct Term::Node {
  Kind kind = Kind::Var;
  VarKind var_kind = VarKind::Free;
  std::size_t index = 0;
  std::string name;  // free name or metavariable id
  OperatorRef op;
  std::vector<Term> children;  // operator children or metavariable args
  std::optional<TypeAnnotation> annotation;
  // Smallest depth at which the node is closed, and whether holes or
  // metavariables occur anywhere below it, annotations included.
  std::size_t span = 0;
  bool holes = false;
  bool metas = false;
};

namespace {

const std::string& empty_string() {
  static const std::string s;
  return s;
}

const std::vector<Term>& empty_terms() {
  static const std::vector<Term> v;
  return v;
}

void absorb(Term::Node& n, const Term& child, bool scoped);

}  // namespace

struct Term::Summary {
  static void absorb(Node& n, const Term& child, bool scoped) {
    if (child.absent()) return;
    const Node& c = *child.node_;
    const std::size_t span = scoped && c.span > 0 ? c.span - 1 : c.span;
    n.span = std::max(n.span, span);
    n.holes = n.holes || c.holes;
    n.metas = n.metas || c.metas;
  }
  static void finish(Node& n) {
    if (n.annotation && !n.annotation->is_universe()) {
      absorb(n, n.annotation->type(), false);
    }
  }
};

namespace {

void absorb(Term::Node& n, const Term& child, bool scoped) {
  Term::Summary::absorb(n, child, scoped);
}

}  // namespace

Term Term::bound(std::size_t index) {
  auto n = std::make_shared<Node>();
  n->var_kind = VarKind::Bound;
  n->index = index;
  n->span = index + 1;
  return Term(std::move(n));
}

Term Term::free(std::string name) {
  auto n = std::make_shared<Node>();
  n->var_kind = VarKind::Free;
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::hole(std::size_t index) {
  auto n = std::make_shared<Node>();
  n->var_kind = VarKind::Hole;
  n->index = index;
  n->holes = true;
  return Term(std::move(n));
}

Term Term::meta(std::string id, std::vector<Term> args,
                std::optional<TypeAnnotation> annotation) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Meta;
  n->name = std::move(id);
  n->children = std::move(args);
  n->annotation = std::move(annotation);
  n->metas = true;
  for (const auto& a : n->children) absorb(*n, a, false);
  Summary::finish(*n);
  return Term(std::move(n));
}

Term Term::op(OperatorRef op, std::vector<Term> children,
              std::optional<TypeAnnotation> annotation) {
  if (!op) throw MalformedTerm("operator node without operator");
  if (children.size() != op->arity()) {
    throw MalformedTerm("operator " + op->tag + " expects " +
                        std::to_string(op->arity()) + " children, got " +
                        std::to_string(children.size()));
  }
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (children[i].absent() && op->slots[i] != SlotKind::OptionalTerm) {
      throw MalformedTerm("operator " + op->tag + ": slot " +
                          std::to_string(i) + " is not optional");
    }
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Op;
  n->op = std::move(op);
  n->children = std::move(children);
  n->annotation = std::move(annotation);
  for (std::size_t i = 0; i < n->children.size(); ++i) {
    absorb(*n, n->children[i], n->op->slots[i] == SlotKind::Scope);
  }
  Summary::finish(*n);
  return Term(std::move(n));
}

std::size_t Term::bound_span() const { return node_ ? node_->span : 0; }
bool Term::has_holes() const { return node_ && node_->holes; }
bool Term::has_metas() const { return node_ && node_->metas; }

Term::Kind Term::kind() const { return node_ ? node_->kind : Kind::Absent; }

bool Term::is_bound() const {
  return is_var() && node_->var_kind == VarKind::Bound;
}
bool Term::is_free() const {
  return is_var() && node_->var_kind == VarKind::Free;
}
bool Term::is_hole() const {
  return is_var() && node_->var_kind == VarKind::Hole;
}

VarKind Term::var_kind() const {
  assert(is_var());
  return node_->var_kind;
}

std::size_t Term::index() const {
  assert(is_var());
  return node_->index;
}

const std::string& Term::name() const {
  return node_ ? node_->name : empty_string();
}

const std::string& Term::meta_id() const {
  assert(is_meta());
  return node_->name;
}

const std::vector<Term>& Term::args() const {
  return is_meta() ? node_->children : empty_terms();
}

const Operator& Term::op() const {
  assert(is_op());
  return *node_->op;
}

const OperatorRef& Term::op_ref() const {
  assert(is_op());
  return node_->op;
}

const std::string& Term::tag() const {
  return is_op() ? node_->op->tag : empty_string();
}

bool Term::has_tag(std::string_view tag) const {
  return is_op() && node_->op->tag == tag;
}

const std::vector<Term>& Term::children() const {
  return is_op() ? node_->children : empty_terms();
}

const std::optional<TypeAnnotation>& Term::annotation() const {
  static const std::optional<TypeAnnotation> none;
  return node_ ? node_->annotation : none;
}

Term Term::with_children(std::vector<Term> children) const {
  if (is_op()) return op(node_->op, std::move(children), node_->annotation);
  if (is_meta()) return meta(node_->name, std::move(children), node_->annotation);
  assert(children.empty());
  return *this;
}

Term Term::with_annotation(std::optional<TypeAnnotation> annotation) const {
  if (!is_op() && !is_meta()) return *this;
  if (is_meta()) return meta(node_->name, node_->children, std::move(annotation));
  return op(node_->op, node_->children, std::move(annotation));
}

namespace {

bool equal_impl(const Term& a, const Term& b, bool with_annotations) {
  if (a.same_node(b)) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Absent:
      return true;
    case Term::Kind::Var:
      if (a.var_kind() != b.var_kind()) return false;
      return a.var_kind() == VarKind::Free ? a.name() == b.name()
                                           : a.index() == b.index();
    case Term::Kind::Meta:
      if (a.meta_id() != b.meta_id()) return false;
      break;
    case Term::Kind::Op:
      if (a.op_ref() != b.op_ref() &&
          (a.tag() != b.tag() || a.op().slots != b.op().slots)) {
        return false;
      }
      break;
  }
  const auto& xs = a.is_meta() ? a.args() : a.children();
  const auto& ys = b.is_meta() ? b.args() : b.children();
  if (xs.size() != ys.size()) return false;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!equal_impl(xs[i], ys[i], with_annotations)) return false;
  }
  if (!with_annotations) return true;
  const auto& ea = a.annotation();
  const auto& eb = b.annotation();
  if (ea.has_value() != eb.has_value()) return false;
  if (!ea) return true;
  if (ea->is_universe() != eb->is_universe()) return false;
  return ea->is_universe() || equal_impl(ea->type(), eb->type(), true);
}

std::optional<TypeAnnotation> map_annotation(
    const std::optional<TypeAnnotation>& ann,
    const std::function<Term(const Term&)>& f) {
  if (!ann || ann->is_universe()) return ann;
  return TypeAnnotation::of(f(ann->type()));
}

}  // namespace

bool operator==(const Term& a, const Term& b) { return equal_impl(a, b, true); }

bool equal_untyped(const Term& a, const Term& b) {
  return equal_impl(a, b, false);
}

namespace {

bool same_annotation(const std::optional<TypeAnnotation>& a,
                     const std::optional<TypeAnnotation>& b) {
  if (a.has_value() != b.has_value()) return false;
  if (!a || a->is_universe() || b->is_universe()) {
    return !a || a->is_universe() == b->is_universe();
  }
  return a->type().same_node(b->type());
}

// Which variables a mapper may change: bound variables at least
// `min_index` above the local depth, holes, and free names.
struct VarFilter {
  std::size_t min_index = 0;
  bool bound = true;
  bool holes = true;
  bool frees = true;
};

bool untouched(const Term& t, std::size_t depth, const VarFilter& f) {
  if (f.frees) return false;
  if (f.holes && t.has_holes()) return false;
  if (!f.bound) return true;
  const std::size_t span = t.bound_span();
  return span <= depth || span - depth <= f.min_index;
}

Term map_filtered(const Term& t, const VarMapper& on_var, std::size_t depth,
                  const VarFilter& f) {
  if (untouched(t, depth, f)) return t;
  switch (t.kind()) {
    case Term::Kind::Absent:
      return t;
    case Term::Kind::Var:
      return on_var(t, depth);
    case Term::Kind::Meta: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      bool changed = false;
      for (const auto& a : t.args()) {
        args.push_back(map_filtered(a, on_var, depth, f));
        changed = changed || !args.back().same_node(a);
      }
      auto ann = map_annotation(t.annotation(), [&](const Term& x) {
        return map_filtered(x, on_var, depth, f);
      });
      if (!changed && same_annotation(ann, t.annotation())) return t;
      return Term::meta(t.meta_id(), std::move(args), std::move(ann));
    }
    case Term::Kind::Op: {
      const auto& slots = t.op().slots;
      std::vector<Term> children;
      children.reserve(slots.size());
      bool changed = false;
      for (std::size_t i = 0; i < slots.size(); ++i) {
        const std::size_t d = slots[i] == SlotKind::Scope ? depth + 1 : depth;
        children.push_back(map_filtered(t.child(i), on_var, d, f));
        changed = changed || !children.back().same_node(t.child(i));
      }
      auto ann = map_annotation(t.annotation(), [&](const Term& x) {
        return map_filtered(x, on_var, depth, f);
      });
      if (!changed && same_annotation(ann, t.annotation())) return t;
      return Term::op(t.op_ref(), std::move(children), std::move(ann));
    }
  }
  return t;
}

VarFilter bound_from(std::size_t min_index) {
  return VarFilter{min_index, true, false, false};
}

}  // namespace

Term map_vars(const Term& t, const VarMapper& on_var, std::size_t depth) {
  return map_filtered(t, on_var, depth, VarFilter{});
}

Term weaken(const Term& t, std::size_t by, std::size_t cutoff) {
  if (by == 0) return t;
  return map_filtered(
      t,
      [&](const Term& v, std::size_t depth) {
        if (v.is_bound() && v.index() >= cutoff + depth) {
          return Term::bound(v.index() + by);
        }
        return v;
      },
      0, bound_from(cutoff));
}

namespace {
struct Occurs {};
}  // namespace

std::optional<Term> strengthen(const Term& t, std::size_t cutoff) {
  try {
    return map_filtered(
        t,
        [&](const Term& v, std::size_t depth) {
          if (!v.is_bound()) return v;
          const std::size_t target = cutoff + depth;
          if (v.index() == target) throw Occurs{};
          if (v.index() > target) return Term::bound(v.index() - 1);
          return v;
        },
        0, bound_from(cutoff));
  } catch (const Occurs&) {
    return std::nullopt;
  }
}

bool occurs_bound(const Term& t, std::size_t index) {
  bool found = false;
  map_filtered(
      t,
      [&](const Term& v, std::size_t depth) {
        if (v.is_bound() && v.index() == index + depth) found = true;
        return v;
      },
      0, bound_from(index));
  return found;
}

Term instantiate(const Term& body, const Term& arg) {
  return map_filtered(
      body,
      [&](const Term& v, std::size_t depth) {
        if (!v.is_bound()) return v;
        if (v.index() == depth) return weaken(arg, depth, 0);
        if (v.index() > depth) return Term::bound(v.index() - 1);
        return v;
      },
      0, bound_from(0));
}

Term instantiate_many(std::span<const Term> assign, const Term& body) {
  return map_filtered(
      body,
      [&](const Term& v, std::size_t depth) {
        if (!v.is_hole()) return v;
        if (v.index() >= assign.size()) {
          throw MissingAssignment("no assignment for hole " +
                                  std::to_string(v.index()));
        }
        return weaken(assign[v.index()], depth, 0);
      },
      0, VarFilter{0, false, true, false});
}

Term substitute_free(const FreeEnv& env, const Term& t) {
  if (env.empty()) return t;
  return map_vars(t, [&](const Term& v, std::size_t depth) {
    if (!v.is_free()) return v;
    auto it = env.find(v.name());
    if (it == env.end()) return v;
    return weaken(it->second, depth, 0);
  });
}

Term trans(const NodeRewriter& phi, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Absent:
    case Term::Kind::Var:
      return t;
    case Term::Kind::Meta: {
      std::vector<Term> args;
      for (const auto& a : t.args()) args.push_back(trans(phi, a));
      auto ann = map_annotation(t.annotation(),
                                [&](const Term& x) { return trans(phi, x); });
      return Term::meta(t.meta_id(), std::move(args), std::move(ann));
    }
    case Term::Kind::Op: {
      std::vector<Term> children;
      for (const auto& c : t.children()) children.push_back(trans(phi, c));
      auto ann = map_annotation(t.annotation(),
                                [&](const Term& x) { return trans(phi, x); });
      return phi(Term::op(t.op_ref(), std::move(children), std::move(ann)));
    }
  }
  return t;
}

Term erase_annotations(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Absent:
    case Term::Kind::Var:
      return t;
    case Term::Kind::Meta: {
      std::vector<Term> args;
      for (const auto& a : t.args()) args.push_back(erase_annotations(a));
      return Term::meta(t.meta_id(), std::move(args));
    }
    case Term::Kind::Op: {
      std::vector<Term> children;
      for (const auto& c : t.children()) children.push_back(erase_annotations(c));
      return Term::op(t.op_ref(), std::move(children));
    }
  }
  return t;
}

namespace {

bool well_scoped_impl(const Signature* sig, const Term& t, std::size_t depth,
                      HolePolicy holes, std::size_t hole_arity) {
  auto check_annotation = [&](const Term& node) {
    const auto& ann = node.annotation();
    return !ann || ann->is_universe() ||
           (!ann->type().absent() &&
            well_scoped_impl(sig, ann->type(), depth, holes, hole_arity));
  };
  switch (t.kind()) {
    case Term::Kind::Absent:
      return false;
    case Term::Kind::Var:
      switch (t.var_kind()) {
        case VarKind::Bound:
          return t.index() < depth;
        case VarKind::Free:
          return !t.name().empty();
        case VarKind::Hole:
          return holes == HolePolicy::Allow && t.index() < hole_arity;
      }
      return false;
    case Term::Kind::Meta:
      for (const auto& a : t.args()) {
        if (!well_scoped_impl(sig, a, depth, holes, hole_arity)) return false;
      }
      return check_annotation(t);
    case Term::Kind::Op: {
      if (sig != nullptr) {
        auto decl = sig->find(t.tag());
        if (!decl || decl->slots != t.op().slots) return false;
      }
      const auto& slots = t.op().slots;
      for (std::size_t i = 0; i < slots.size(); ++i) {
        const Term& c = t.child(i);
        if (c.absent()) {
          if (slots[i] != SlotKind::OptionalTerm) return false;
          continue;
        }
        const std::size_t d = slots[i] == SlotKind::Scope ? depth + 1 : depth;
        if (!well_scoped_impl(sig, c, d, holes, hole_arity)) return false;
      }
      return check_annotation(t);
    }
  }
  return false;
}

void collect(const Term& t, const std::function<void(const Term&)>& visit) {
  if (t.absent()) return;
  visit(t);
  for (const auto& c : t.is_meta() ? t.args() : t.children()) collect(c, visit);
  const auto& ann = t.annotation();
  if (ann && !ann->is_universe()) collect(ann->type(), visit);
}

}  // namespace

bool well_scoped(const Signature& sig, const Term& t, std::size_t depth,
                 HolePolicy holes, std::size_t hole_arity) {
  return well_scoped_impl(&sig, t, depth, holes, hole_arity);
}

bool bound_within(const Term& t, std::size_t depth) {
  return well_scoped_impl(nullptr, t, depth, HolePolicy::Allow,
                          static_cast<std::size_t>(-1));
}

std::set<std::string> free_names(const Term& t) {
  std::set<std::string> out;
  collect(t, [&](const Term& s) {
    if (s.is_free()) out.insert(s.name());
  });
  return out;
}

std::set<std::string> metas_of(const Term& t) {
  std::set<std::string> out;
  collect(t, [&](const Term& s) {
    if (s.is_meta()) out.insert(s.meta_id());
  });
  return out;
}

bool mentions_meta(const Term& t, const std::string& id) {
  bool found = false;
  collect(t, [&](const Term& s) {
    if (s.is_meta() && s.meta_id() == id) found = true;
  });
  return found;
}

std::size_t op_count(const Term& t) {
  if (t.absent() || t.is_var()) return 0;
  std::size_t n = t.is_op() ? 1 : 0;
  for (const auto& c : t.is_meta() ? t.args() : t.children()) n += op_count(c);
  return n;
}

}  // namespace soas
