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

#include "soas/languages.hpp"

#include <utility>

namespace soas {

namespace {

using S = SlotKind;
using H = IsHead;

TypeAnnotation of(Term t) { return TypeAnnotation::of(erase_annotations(t)); }

const TypeAnnotation kTop = TypeAnnotation::universe();

// ---- reducers -------------------------------------------------------------

Reducer beta_reducer() {
  return Reducer{{"App"}, [](const Term& node, const Recurse& reduce) {
                   Term fn = reduce(node.child(0));
                   if (fn.has_tag("Lam")) {
                     const Term& body = fn.children().back();
                     return reduce(instantiate(body, node.child(1)));
                   }
                   return node.with_children({fn, node.child(1)});
                 }};
}

Reducer projection_reducer() {
  return Reducer{{"First", "Second"},
                 [](const Term& node, const Recurse& reduce) {
                   Term p = reduce(node.child(0));
                   if (p.has_tag("Pair")) {
                     return reduce(p.child(node.has_tag("First") ? 0 : 1));
                   }
                   return node.with_children({p});
                 }};
}

Reducer j_reducer() {
  return Reducer{{"J"}, [](const Term& node, const Recurse& reduce) {
                   Term p = reduce(node.child(5));
                   if (p.has_tag("Refl")) return reduce(node.child(3));
                   std::vector<Term> children = node.children();
                   children[5] = p;
                   return node.with_children(std::move(children));
                 }};
}

// ---- signatures -----------------------------------------------------------

Signature ulc_signature() {
  Signature::Builder b("lambda");
  b.add_operator("Lam", {S::Scope});
  b.add_operator("App", {S::Term, S::Term});
  b.add_guess("App", 0, "Lam");
  b.add_shape("App", {H::HasHead, H::NoHead});
  return b.build();
}

// Lam annotations are hints: a missing one is paired with the other side's.
std::optional<MatchedNode> match_annotated_lam(const Term& l, const Term& r) {
  if (!l.has_tag("Lam") || !r.has_tag("Lam")) return std::nullopt;
  Term la = l.child(0);
  Term ra = r.child(0);
  if (la.absent()) la = ra;
  if (ra.absent()) ra = la;
  return MatchedNode{l.op_ref(),
                     {SlotPair{S::OptionalTerm, la, ra},
                      SlotPair{S::Scope, l.child(1), r.child(1)}}};
}

Signature stlc_lambda_signature() {
  Signature::Builder b("typed lambda");
  b.add_operator("Fun", {S::Term, S::Term});
  b.add_operator("Lam", {S::OptionalTerm, S::Scope});
  b.add_operator("App", {S::Term, S::Term});
  b.add_guess("App", 0, "Lam");
  b.add_shape("App", {H::HasHead, H::NoHead});
  b.set_match_override("Lam", match_annotated_lam);
  return b.build();
}

Signature pair_signature(std::string_view product, SlotKind second) {
  Signature::Builder b("pairs");
  b.add_operator(std::string(product), {S::Term, second});
  b.add_operator("Pair", {S::Term, S::Term});
  b.add_operator("First", {S::Term});
  b.add_operator("Second", {S::Term});
  b.add_guess("First", 0, "Pair");
  b.add_guess("Second", 0, "Pair");
  b.add_shape("First", {H::HasHead});
  b.add_shape("Second", {H::HasHead});
  return b.build();
}

Signature universe_signature() {
  Signature::Builder b("universe");
  b.add_operator("U", {});
  return b.build();
}

Signature pi_signature() {
  Signature::Builder b("pi");
  b.add_operator("U", {});
  b.add_operator("Pi", {S::Term, S::Scope});
  b.add_operator("Lam", {S::Scope});
  b.add_operator("App", {S::Term, S::Term});
  b.add_guess("App", 0, "Lam");
  b.add_shape("App", {H::HasHead, H::NoHead});
  return b.build();
}

Signature identity_signature() {
  Signature::Builder b("identity");
  b.add_operator("Id", {S::Term, S::Term});
  b.add_operator("Refl", {S::Term});
  b.add_operator("J", std::vector<SlotKind>(6, S::Term));
  b.add_guess("J", 5, "Refl");
  return b.build();
}

// ---- STLC inference -------------------------------------------------------

// Types are compared up to reduction, but a written domain is also shown in
// the result, so reduce it all the way.
Term normal_type(const Checker& c, const Term& t) {
  Term w = c.whnf(t);
  if (!w.is_op()) return w;
  std::vector<Term> children;
  for (const auto& child : w.children()) {
    children.push_back(child.absent() ? child : normal_type(c, child));
  }
  return w.with_children(std::move(children));
}

Term infer_stlc(Checker& c, const Term& node) {
  const Signature& sig = c.system().theory.signature;
  const std::string& tag = node.tag();
  auto type_child = [&](const Term& t) {
    Term a = c.infer(t);
    c.should_have_type(a, kTop);
    return a;
  };

  if (tag == "U") return node.with_annotation(kTop);

  if (tag == "Fun" || tag == "PairTy") {
    Term a = type_child(node.child(0));
    Term b = type_child(node.child(1));
    return node.with_children({a, b}).with_annotation(kTop);
  }

  if (tag == "Lam") {
    Term ann;
    Term dom;
    if (!node.child(0).absent()) {
      ann = type_child(node.child(0));
      dom = normal_type(c, erase_annotations(c.clarify(ann)));
    } else {
      dom = erase_annotations(c.fresh_type_meta_var());
    }
    Term body;
    Term cod;
    c.in_scope(TypeAnnotation::of(dom), [&] {
      body = c.infer(node.child(1));
      cod = c.non_dep(c.type_term(c.type_of(body)));
    });
    return node.with_children({ann, body})
        .with_annotation(of(sig.make("Fun", {c.clarify(dom), cod})));
  }

  if (tag == "App") {
    Term f = c.infer(node.child(0));
    Term ft = c.whnf(c.type_term(c.type_of(f)));
    Term dom;
    Term cod;
    if (ft.has_tag("Fun")) {
      dom = ft.child(0);
      cod = ft.child(1);
    } else {
      dom = erase_annotations(c.fresh_type_meta_var());
      cod = erase_annotations(c.fresh_type_meta_var());
      c.unify_with_expected(ft, sig.make("Fun", {dom, cod}));
    }
    Term a = c.infer(node.child(1));
    c.should_have_type(a, of(c.clarify(dom)));
    return node.with_children({f, a}).with_annotation(of(c.clarify(cod)));
  }

  if (tag == "Pair") {
    Term a = c.infer(node.child(0));
    Term b = c.infer(node.child(1));
    Term ty = sig.make("PairTy", {c.type_term(c.type_of(a)),
                                  c.type_term(c.type_of(b))});
    return node.with_children({a, b}).with_annotation(of(ty));
  }

  if (tag == "First" || tag == "Second") {
    Term p = c.infer(node.child(0));
    Term pt = c.whnf(c.type_term(c.type_of(p)));
    if (!pt.has_tag("PairTy")) {
      Term want = sig.make("PairTy", {erase_annotations(c.fresh_type_meta_var()),
                                      erase_annotations(c.fresh_type_meta_var())});
      c.unify_with_expected(pt, want);
      pt = c.clarify(want);
    }
    Term ty = pt.child(tag == "First" ? 0 : 1);
    return node.with_children({p}).with_annotation(of(ty));
  }

  throw TypeError(TypeErrorKind::Unsupported, "no typing rule for " + tag,
                  std::nullopt, node, c.depth());
}

// ---- MLTT inference -------------------------------------------------------

Term infer_mltt(Checker& c, const Term& node) {
  const Signature& sig = c.system().theory.signature;
  const Term universe = c.system().universe;
  const std::string& tag = node.tag();
  auto against = [&](const Term& t, const Term& ty) {
    Term a = c.infer(t);
    c.should_have_type(a, of(c.clarify(ty)));
    return a;
  };
  auto plain = [&](const Term& annotated) {
    return erase_annotations(c.clarify(annotated));
  };
  // A fresh B under a new binder of type A.
  auto fresh_family = [&](const Term& a) {
    Term b;
    c.in_scope(TypeAnnotation::of(a), [&] {
      b = erase_annotations(c.fresh_type_meta_var());
    });
    return b;
  };

  if (tag == "U") return node.with_annotation(kTop);

  if (tag == "Pi" || tag == "Sigma") {
    Term a = against(node.child(0), universe);
    Term b;
    Term b_type;
    c.in_scope(TypeAnnotation::of(plain(a)), [&] {
      b = c.infer(node.child(1));
      b_type = c.non_dep(c.type_term(c.type_of(b)));
    });
    c.unify_with_expected(b_type, universe);
    return node.with_children({a, b}).with_annotation(of(universe));
  }

  if (tag == "Lam") {
    Term dom = erase_annotations(c.fresh_type_meta_var());
    Term body;
    Term cod;
    c.in_scope(TypeAnnotation::of(dom), [&] {
      body = c.infer(node.child(0));
      cod = c.type_term(c.type_of(body));
    });
    return node.with_children({body}).with_annotation(
        of(c.clarify(sig.make("Pi", {dom, cod}))));
  }

  if (tag == "App") {
    Term f = c.infer(node.child(0));
    Term ft = c.whnf(c.type_term(c.type_of(f)));
    if (!ft.has_tag("Pi")) {
      Term a = erase_annotations(c.fresh_type_meta_var());
      Term want = sig.make("Pi", {a, fresh_family(a)});
      c.unify_with_expected(ft, want);
      ft = c.clarify(want);
    }
    Term x = against(node.child(1), ft.child(0));
    Term ty = instantiate(c.clarify(ft.child(1)), plain(x));
    return node.with_children({f, x}).with_annotation(of(c.clarify(ty)));
  }

  if (tag == "Pair") {
    Term a = c.infer(node.child(0));
    Term b = c.infer(node.child(1));
    Term ty = sig.make("Sigma", {c.type_term(c.type_of(a)),
                                 weaken(c.type_term(c.type_of(b)))});
    return node.with_children({a, b}).with_annotation(of(ty));
  }

  if (tag == "First" || tag == "Second") {
    Term p = c.infer(node.child(0));
    Term pt = c.whnf(c.type_term(c.type_of(p)));
    if (!pt.has_tag("Sigma")) {
      Term a = erase_annotations(c.fresh_type_meta_var());
      Term want = sig.make("Sigma", {a, fresh_family(a)});
      c.unify_with_expected(pt, want);
      pt = c.clarify(want);
    }
    Term ty = tag == "First"
                  ? pt.child(0)
                  : instantiate(pt.child(1), sig.make("First", {plain(p)}));
    return node.with_children({p}).with_annotation(of(c.clarify(ty)));
  }

  if (tag == "Id") {
    Term a = c.infer(node.child(0));
    Term b = c.infer(node.child(1));
    c.should_have_type(b, c.clarify(c.type_of(a)));
    return node.with_children({a, b}).with_annotation(of(universe));
  }

  if (tag == "Refl") {
    Term t = c.infer(node.child(0));
    Term ty = sig.make("Id", {plain(t), plain(t)});
    return node.with_children({t}).with_annotation(of(ty));
  }

  if (tag == "J") {
    Term ty_a = against(node.child(0), universe);
    Term a_t = plain(ty_a);
    Term a = against(node.child(1), a_t);
    Term a_p = plain(a);
    // C : (x : A) -> (a = x) -> U
    Term motive_ty = sig.make(
        "Pi", {a_t, sig.make("Pi", {sig.make("Id", {weaken(a_p), Term::bound(0)}),
                                    universe})});
    Term motive = against(node.child(2), motive_ty);
    Term c_p = plain(motive);
    Term base_ty = sig.make(
        "App", {sig.make("App", {c_p, a_p}), sig.make("Refl", {a_p})});
    Term d = against(node.child(3), base_ty);
    Term x = against(node.child(4), c.clarify(a_t));
    Term x_p = plain(x);
    Term p = against(node.child(5), sig.make("Id", {c.clarify(a_p), x_p}));
    Term ty = sig.make("App", {sig.make("App", {c.clarify(c_p), x_p}), plain(p)});
    return node.with_children({ty_a, a, motive, d, x, p})
        .with_annotation(of(c.clarify(ty)));
  }

  throw TypeError(TypeErrorKind::Unsupported, "no typing rule for " + tag,
                  std::nullopt, node, c.depth());
}

Language make_ulc() {
  return Language{"ulc", Theory{ulc_signature(), beta_reducer()}, std::nullopt};
}

Language make_stlc() {
  Signature sig = Signature::sum(
      "stlc",
      Signature::sum("stlc", stlc_lambda_signature(),
                     pair_signature("PairTy", S::Term)),
      universe_signature());
  Reducer red = sum_reduce(beta_reducer(), projection_reducer());
  Theory theory{sig, red};
  Term universe = sig.make("U", {});
  return Language{"stlc", theory, TypeSystem{theory, universe, infer_stlc}};
}

Language make_mltt() {
  Signature sig = Signature::sum(
      "mltt",
      Signature::sum("mltt", pi_signature(), pair_signature("Sigma", S::Scope)),
      identity_signature());
  Reducer red = sum_reduce(sum_reduce(beta_reducer(), projection_reducer()),
                           j_reducer());
  Theory theory{sig, red};
  Term universe = sig.make("U", {});
  return Language{"mltt", theory, TypeSystem{theory, universe, infer_mltt}};
}

}  // namespace

const Language& ulc() {
  static const Language lang = make_ulc();
  return lang;
}

const Language& stlc() {
  static const Language lang = make_stlc();
  return lang;
}

const Language& mltt() {
  static const Language lang = make_mltt();
  return lang;
}

const Language* find_language(std::string_view name) {
  if (name == "ulc") return &ulc();
  if (name == "stlc") return &stlc();
  if (name == "mltt") return &mltt();
  return nullptr;
}

std::vector<std::string> language_names() { return {"ulc", "stlc", "mltt"}; }

}  // namespace soas
