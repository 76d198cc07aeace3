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

#include <gtest/gtest.h>

#include <fstream>
#include <string>
#include <vector>

#include "soas/reduction.hpp"
#include "soas/syntax.hpp"
#include "soas/typecheck.hpp"
#include "test_util.hpp"

namespace soas {
namespace {

using testing::parse;

std::vector<std::string> corpus(const std::string& name) {
  std::ifstream in(std::string(SOAS_TEST_DATA_DIR) + "/corpus/" + name + ".txt");
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

TEST(LanguagesTest, Registry) {
  EXPECT_EQ(language_names(), (std::vector<std::string>{"ulc", "stlc", "mltt"}));
  EXPECT_EQ(find_language("mltt"), &mltt());
  EXPECT_EQ(find_language("coq"), nullptr);
  EXPECT_FALSE(ulc().typing.has_value());
  EXPECT_TRUE(stlc().typing.has_value());
  EXPECT_TRUE(mltt().typing.has_value());
}

TEST(LanguagesTest, OperatorTables) {
  for (const char* tag : {"Lam", "App", "Fun", "Pair", "First", "Second", "PairTy", "U"}) {
    EXPECT_TRUE(stlc().signature().has(tag)) << tag;
  }
  for (const char* tag : {"Pi", "Sigma", "Id", "Refl", "J", "Lam", "App", "U"}) {
    EXPECT_TRUE(mltt().signature().has(tag)) << tag;
  }
  EXPECT_FALSE(ulc().signature().has("Pair"));
  EXPECT_EQ(mltt().signature().at("J")->arity(), 6u);
}

TEST(LanguagesTest, JComputesOnRefl) {
  const Language& l = mltt();
  EXPECT_EQ(reduce(l.reducer(), parse("J(A, a, C, (\\x. x) d, a, refl a)", l)),
            Term::free("d"));
  Term stuck = parse("J(A, a, C, d, x, p)", l);
  EXPECT_EQ(reduce(l.reducer(), stuck), stuck);
}

// Every registered guess turns its host node into a redex.
TEST(LanguagesTest, GuessesEnableReduction) {
  for (const Language* l : {&ulc(), &stlc(), &mltt()}) {
    const Signature& sig = l->signature();
    for (const auto& op : sig.operators()) {
      for (std::size_t slot = 0; slot < op->arity(); ++slot) {
        for (const auto& g : sig.guesses(op->tag, slot)) {
          auto filler = [](const Operator& o, const std::string& base) {
            std::vector<Term> children;
            for (std::size_t i = 0; i < o.arity(); ++i) {
              if (o.slots[i] == SlotKind::Scope) {
                children.push_back(Term::meta(base + std::to_string(i), {Term::bound(0)}));
              } else if (o.slots[i] == SlotKind::OptionalTerm) {
                children.push_back(Term());
              } else {
                children.push_back(Term::meta(base + std::to_string(i), {}));
              }
            }
            return children;
          };
          std::vector<Term> children = filler(*op, "h");
          children[slot] = Term::op(g, filler(*g, "g"));
          Term host = Term::op(op, children);
          EXPECT_NE(reduce(l->reducer(), host), host)
              << l->name << ": " << op->tag << "/" << slot << " -> " << g->tag;
        }
      }
    }
  }
}

TEST(LanguagesTest, CorpusCoversEveryOperator) {
  for (const Language* l : {&ulc(), &stlc(), &mltt()}) {
    std::set<std::string> seen;
    for (const auto& src : corpus(l->name)) {
      Term t = parse(src, *l);
      trans([&](const Term& n) {
        if (n.is_op()) seen.insert(n.tag());
        return n;
      }, t);
    }
    for (const auto& op : l->signature().operators()) {
      EXPECT_TRUE(seen.count(op->tag)) << l->name << " misses " << op->tag;
    }
  }
}

TEST(LanguagesTest, SubjectReductionOnStlcCorpus) {
  const TypeSystem& ts = *stlc().typing;
  std::size_t typed = 0;
  for (const auto& src : corpus("stlc")) {
    Term t = parse(src);
    std::optional<Inferred> before;
    try {
      before = infer_type(ts, t);
    } catch (const TypeError&) {
      continue;
    }
    if (before->type.is_universe()) continue;
    ++typed;
    Term reduced = reduce(stlc().reducer(), t);
    EXPECT_NO_THROW(check_type(ts, reduced, before->type.type())) << src;
  }
  EXPECT_GE(typed, 10u);
}

TEST(LanguagesTest, ErasedResultReinfers) {
  const TypeSystem& ts = *stlc().typing;
  for (const auto& src : corpus("stlc")) {
    Term t = parse(src);
    std::optional<Inferred> first;
    try {
      first = infer_type(ts, t);
    } catch (const TypeError&) {
      continue;
    }
    Term erased = erase_annotations(first->term);
    EXPECT_TRUE(equal_up_to_meta_renaming(erased, t)) << src;
    Inferred again = infer_type(ts, erased);
    if (first->type.is_universe()) {
      EXPECT_TRUE(again.type.is_universe()) << src;
      continue;
    }
    EXPECT_TRUE(equal_up_to_meta_renaming(erase_annotations(again.type.type()),
                                          erase_annotations(first->type.type())))
        << src;
  }
}

// Checking against T succeeds exactly when the inferred type preunifies with T.
TEST(LanguagesTest, CheckAgreesWithUnification) {
  const TypeSystem& ts = *stlc().typing;
  const std::vector<std::string> terms{"\\x. x", "\\x. \\y. x", "\\(p : A * B). first p",
                                       "<a, b>", "\\(x : A). <x, x>"};
  const std::vector<std::string> types{"A -> A", "A -> B -> A", "A * B -> A",
                                       "A -> B", "C * D", "A -> A * A", "?t[]"};
  for (const auto& src : terms) {
    for (const auto& ty : types) {
      Inferred inferred = infer_type(ts, parse(src));
      Constraint c = Constraint::eq(erase_annotations(inferred.type.type()), parse(ty));
      UnifyResult u = unify(ts.theory, inferred.info.meta_var_substs,
                            {c}, {}, inferred.info.supply);
      bool checks = true;
      try {
        check_type(ts, parse(src), parse(ty));
      } catch (const TypeError&) {
        checks = false;
      }
      EXPECT_EQ(checks, std::holds_alternative<Solution>(u)) << src << " : " << ty;
    }
  }
}

}  // namespace
}  // namespace soas
