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

#include <gtest/gtest.h>

#include "soas/languages.hpp"
#include "soas/syntax.hpp"
#include "test_util.hpp"

namespace soas {
namespace {

using testing::parse;

const TypeSystem& stlc_ts() { return *stlc().typing; }
const TypeSystem& mltt_ts() { return *mltt().typing; }

// Type of the inferred term, with metas numbered by first appearance.
std::string shown_type(const Inferred& r) {
  Term ty = r.type.type();
  std::vector<std::string> order;
  collect_metas(ty, order);
  return print_term(rename_metas(ty, canonical_names(order, "a")));
}

TypeErrorKind error_kind(const TypeSystem& ts, const std::string& src,
                         const Language& lang, const std::string& type = "") {
  try {
    if (type.empty()) {
      infer_type(ts, parse(src, lang));
    } else {
      check_type(ts, parse(src, lang), parse(type, lang));
    }
  } catch (const TypeError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no type error for " << src;
  return TypeErrorKind::Unsupported;
}

TEST(CheckerTest, NestedLambdaGetsGeneralType) {
  Inferred r = infer_type(stlc_ts(), parse("\\x. \\y. y"));
  EXPECT_EQ(shown_type(r), "?a1[] -> (?a2[] -> ?a2[])");
  EXPECT_TRUE(equal_up_to_meta_renaming(r.type.type(), parse("?p[] -> ?q[] -> ?q[]")));
  // The inner lambda is annotated with its own arrow type.
  const Term& inner = r.term.children().back();
  ASSERT_TRUE(inner.annotation().has_value());
  EXPECT_TRUE(equal_up_to_meta_renaming(inner.annotation()->type(),
                                        parse("?b[] -> ?b[]")));
  EXPECT_TRUE(r.info.constraints.empty());
}

TEST(CheckerTest, FunctionTypeIsAType) {
  Checker c(stlc_ts());
  Term node = c.infer(parse("A -> B"));
  ASSERT_TRUE(node.annotation().has_value());
  EXPECT_TRUE(node.annotation()->is_universe());
}

TEST(CheckerTest, ApplicationForcesArrow) {
  Checker c(stlc_ts());
  c.info().free_var_types.emplace("f", TypeAnnotation::of(Term::meta("t", {})));
  c.info().supply.reserve("t");
  Term node = c.infer(parse("f a"));
  Term f_type = c.clarify(Term::meta("t", {}));
  EXPECT_TRUE(f_type.has_tag("Fun")) << print_term(f_type);
  EXPECT_EQ(f_type.child(1), c.type_term(c.type_of(node)));
}

TEST(CheckerTest, ApplicationAgreesWithDomain) {
  Inferred r = infer_type(stlc_ts(), parse("(\\(x : A). x) a"));
  EXPECT_EQ(shown_type(r), "A");
  EXPECT_EQ(error_kind(stlc_ts(), "(\\(x : A). <x, x>) a", stlc(), "A"),
            TypeErrorKind::UnificationFailure);
}

TEST(CheckerTest, PairsAndProjections) {
  EXPECT_EQ(shown_type(infer_type(stlc_ts(), parse("\\(p : A * B). second p"))),
            "A * B -> B");
  EXPECT_EQ(shown_type(infer_type(stlc_ts(), parse("\\(x : A). <x, x>"))),
            "A -> A * A");
}

TEST(CheckerTest, ComputationInTypes) {
  Inferred r = infer_type(stlc_ts(), parse("\\(f : ((\\x. x) A) -> B). f x"));
  EXPECT_EQ(shown_type(r), "(A -> B) -> B");
  check_type(stlc_ts(), parse("\\(x : (\\t. t) A). x"), parse("A -> A"));
}

TEST(CheckerTest, RigidArgumentMismatch) {
  Checker c(stlc_ts());
  c.info().free_var_types.emplace("a", TypeAnnotation::of(Term::free("A")));
  try {
    c.check(Term::free("a"), Term::free("B"));
    FAIL() << "expected a mismatch";
  } catch (const TypeError& e) {
    EXPECT_EQ(e.kind(), TypeErrorKind::UnificationFailure);
    ASSERT_TRUE(e.constraint().has_value());
  }
}

TEST(CheckerTest, SelfApplicationIsRejected) {
  EXPECT_EQ(error_kind(stlc_ts(), "\\x. x x", stlc()), TypeErrorKind::UnificationFailure);
}

TEST(CheckerTest, DependentDomainEscapesInStlc) {
  EXPECT_EQ(error_kind(stlc_ts(), "\\A. \\(x : A). x", stlc()),
            TypeErrorKind::DependencyEscape);
  EXPECT_EQ(error_kind(stlc_ts(), "\\A. \\(x : A). x", stlc(), "?t[]"),
            TypeErrorKind::DependencyEscape);
}

TEST(CheckerTest, CheckAgainstGivenType) {
  Inferred r = check_type(stlc_ts(), parse("\\x. x"), parse("A -> A"));
  EXPECT_EQ(shown_type(r), "A -> A");
  EXPECT_EQ(error_kind(stlc_ts(), "\\x. x", stlc(), "A -> B"),
            TypeErrorKind::UnificationFailure);
}

TEST(CheckerTest, MetaTermsGetMetaTypes) {
  Inferred r = infer_type(stlc_ts(), parse("\\(x : A). ?h[x]"));
  EXPECT_TRUE(r.type.type().has_tag("Fun"));
  EXPECT_EQ(r.type.type().child(0), Term::free("A"));
}

TEST(CheckerTest, AttemptRestoresState) {
  Checker c(stlc_ts());
  const std::size_t before = c.info().meta_var_substs.size();
  auto r = c.attempt([&] {
    c.unify_with_expected(c.fresh_type_meta_var(), Term::free("A"));
    c.unify_with_expected(Term::free("A"), Term::free("B"));
    return Term::free("unreachable");
  });
  EXPECT_FALSE(r.has_value());
  EXPECT_EQ(c.info().meta_var_substs.size(), before);
  Term t = c.first_success({[&]() -> Term { throw TypeError(TypeErrorKind::Unsupported, "no"); },
                            [] { return Term::free("ok"); }});
  EXPECT_EQ(t, Term::free("ok"));
}

TEST(CheckerTest, NonDependentStrengthening) {
  Checker c(stlc_ts());
  c.in_scope(TypeAnnotation::universe(), [&] {
    EXPECT_EQ(c.non_dep(Term::free("A")), Term::free("A"));
    try {
      c.non_dep(Term::bound(0));
      ADD_FAILURE() << "expected escape";
    } catch (const TypeError& e) {
      EXPECT_EQ(e.kind(), TypeErrorKind::DependencyEscape);
    }
    return 0;
  });
  EXPECT_EQ(c.depth(), 0u);
}

TEST(CheckerTest, NonDependentPrunesMetaArguments) {
  Checker c(stlc_ts());
  c.info().supply.reserve("m");
  Term pruned = c.in_scope(TypeAnnotation::universe(), [&] {
    return c.non_dep(Term::meta("m", {Term::bound(0), Term::free("a")}));
  });
  ASSERT_TRUE(pruned.is_meta());
  EXPECT_EQ(pruned.args(), std::vector<Term>{Term::free("a")});
  const MetaAbs* abs = c.info().meta_var_substs.find("m");
  ASSERT_NE(abs, nullptr);
  EXPECT_EQ(abs->arity, 2u);
}

TEST(MlttCheckerTest, PolymorphicIdentity) {
  Inferred r = check_type(mltt_ts(), parse("\\A. \\x. x", mltt()),
                          parse("(A : U) -> (x : A) -> A", mltt()));
  EXPECT_EQ(print_term(r.type.type()), "(x : U) -> (x -> x)");
  EXPECT_TRUE(r.info.constraints.empty());
}

TEST(MlttCheckerTest, TypeInType) {
  Inferred r = check_type(mltt_ts(), parse("U", mltt()), parse("U", mltt()));
  EXPECT_TRUE(r.type.is_universe());
}

TEST(MlttCheckerTest, DependentCodomainMustBeAType) {
  EXPECT_EQ(error_kind(mltt_ts(), "(x : A) -> refl x", mltt()),
            TypeErrorKind::DependencyEscape);
}

TEST(MlttCheckerTest, ReflAndIdentity) {
  Inferred r = check_type(mltt_ts(), parse("\\A. \\a. refl a", mltt()),
                          parse("(A : U) -> (a : A) -> a = a", mltt()));
  EXPECT_EQ(print_term(r.type.type()), "(x : U) -> ((y : x) -> y = y)");
  EXPECT_EQ(error_kind(mltt_ts(), "\\A. \\a. \\b. refl a", mltt(),
                       "(A : U) -> (a : A) -> (b : A) -> a = b"),
            TypeErrorKind::UnificationFailure);
}

TEST(MlttCheckerTest, TransportWithJ) {
  const std::string term =
      "\\A. \\P. \\a. \\b. \\e. \\d. "
      "J(A, a, \\y. \\q. P y, d, b, e)";
  const std::string type =
      "(A : U) -> (P : A -> U) -> (a : A) -> (b : A) -> a = b -> P a -> P b";
  Inferred r = check_type(mltt_ts(), parse(term, mltt()), parse(type, mltt()));
  EXPECT_TRUE(r.info.constraints.empty());
}

TEST(MlttCheckerTest, SigmaProjections) {
  Inferred r = check_type(
      mltt_ts(), parse("\\A. \\B. \\p. second p", mltt()),
      parse("(A : U) -> (B : A -> U) -> (p : (x : A) * B x) -> B (first p)", mltt()));
  EXPECT_TRUE(r.info.constraints.empty());
}

TEST(CheckerTest, ReducerFuelSurfacesAsTypeError) {
  SearchConfig cfg;
  cfg.reduce_fuel = 2;
  try {
    check_type(mltt_ts(), parse("refl a", mltt()),
               parse("a = (\\x. x) ((\\x. x) ((\\x. x) ((\\x. x) a)))", mltt()), cfg);
    FAIL() << "expected an error";
  } catch (const TypeError& e) {
    EXPECT_EQ(e.kind(), TypeErrorKind::FuelExhausted);
  }
}

}  // namespace
}  // namespace soas
