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

#include "soas/signature.hpp"

#include <gtest/gtest.h>

#include <stdexcept>

#include "soas/languages.hpp"
#include "test_util.hpp"

namespace soas {
namespace {

using testing::parse;

TEST(SignatureTest, BuilderRejectsBadTables) {
  {
    Signature::Builder b("dup");
    b.add_operator("A", {});
    EXPECT_THROW(b.add_operator("A", {}), std::invalid_argument);
  }
  {
    Signature::Builder b("unknown guess");
    b.add_operator("A", {SlotKind::Term});
    b.add_guess("A", 0, "B");
    EXPECT_THROW(b.build(), std::invalid_argument);
  }
  {
    Signature::Builder b("slot out of range");
    b.add_operator("A", {SlotKind::Term});
    b.add_guess("A", 1, "A");
    EXPECT_THROW(b.build(), std::invalid_argument);
  }
  {
    Signature::Builder b("headless shape");
    b.add_operator("A", {SlotKind::Term});
    b.add_shape("A", {IsHead::NoHead});
    EXPECT_THROW(b.build(), std::invalid_argument);
  }
  {
    Signature::Builder b("shape arity");
    b.add_operator("A", {SlotKind::Term});
    b.add_shape("A", {IsHead::HasHead, IsHead::NoHead});
    EXPECT_THROW(b.build(), std::invalid_argument);
  }
}

TEST(SignatureTest, SumIsDisjoint) {
  Signature::Builder l("l");
  l.add_operator("A", {});
  Signature::Builder r("r");
  r.add_operator("B", {SlotKind::Scope});
  Signature s = Signature::sum("lr", l.build(), r.build());
  EXPECT_TRUE(s.has("A"));
  EXPECT_TRUE(s.has("B"));
  EXPECT_EQ(s.operators().size(), 2u);
  EXPECT_THROW(Signature::sum("ll", l.build(), l.build()), std::invalid_argument);
}

TEST(SignatureTest, LookupAndMake) {
  const Signature& s = stlc().signature();
  EXPECT_EQ(s.find("Nope"), nullptr);
  EXPECT_THROW(s.at("Nope"), MalformedTerm);
  EXPECT_EQ(s.at("Lam")->slots,
            (std::vector<SlotKind>{SlotKind::OptionalTerm, SlotKind::Scope}));
  EXPECT_THROW(s.make("Pair", {}), MalformedTerm);
}

TEST(SignatureTest, GuessTables) {
  EXPECT_EQ(ulc().signature().guesses("App", 0).front()->tag, "Lam");
  EXPECT_TRUE(ulc().signature().guesses("App", 1).empty());
  EXPECT_EQ(stlc().signature().guesses("First", 0).front()->tag, "Pair");
  EXPECT_EQ(stlc().signature().guesses("Second", 0).front()->tag, "Pair");
  const Signature& m = mltt().signature();
  EXPECT_EQ(m.guesses("App", 0).front()->tag, "Lam");
  EXPECT_EQ(m.guesses("First", 0).front()->tag, "Pair");
  EXPECT_EQ(m.guesses("J", 5).front()->tag, "Refl");
  for (std::size_t i = 0; i < 5; ++i) EXPECT_TRUE(m.guesses("J", i).empty());

  auto per_slot = guesses_for(m, parse("J(A, a, C, d, x, p)", mltt()));
  ASSERT_EQ(per_slot.size(), 6u);
  EXPECT_EQ(per_slot[5].size(), 1u);
}

TEST(SignatureTest, ShapesMarkHeads) {
  const auto& shapes = shapes_of(stlc().signature());
  ASSERT_EQ(shapes.size(), 3u);
  EXPECT_EQ(shapes[0].op->tag, "App");
  EXPECT_EQ(shapes[0].slots, (std::vector<IsHead>{IsHead::HasHead, IsHead::NoHead}));
  EXPECT_EQ(stlc().signature().head_slot("First"), 0u);
  EXPECT_EQ(stlc().signature().head_slot("Lam"), std::nullopt);
}

TEST(SignatureTest, DefaultZipMatchPairsSlots) {
  const Signature& s = ulc().signature();
  auto m = zip_match(s, parse("\\x. a", ulc()), parse("\\x. b", ulc()));
  ASSERT_TRUE(m.has_value());
  ASSERT_EQ(m->slots.size(), 1u);
  EXPECT_EQ(m->slots[0].kind, SlotKind::Scope);
  EXPECT_EQ(m->slots[0].left, Term::free("a"));
  EXPECT_FALSE(zip_match(s, parse("f a", ulc()), parse("\\x. x", ulc())).has_value());
}

TEST(SignatureTest, PairAgainstProjectionClashes) {
  EXPECT_FALSE(
      zip_match(stlc().signature(), parse("<a1, b1>"), parse("first t")).has_value());
}

TEST(SignatureTest, AnnotatedLamPairsWithItself) {
  const Signature& s = stlc().signature();
  auto m = zip_match(s, parse("\\(x : A). b1"), parse("\\x. b2"));
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->slots[0].left, Term::free("A"));
  EXPECT_EQ(m->slots[0].right, Term::free("A"));
  EXPECT_EQ(m->slots[1].left, Term::free("b1"));
  EXPECT_EQ(m->slots[1].right, Term::free("b2"));

  auto both = zip_match(s, parse("\\x. b1"), parse("\\x. b2"));
  ASSERT_TRUE(both.has_value());
  EXPECT_TRUE(both->slots[0].left.absent());
  EXPECT_TRUE(both->slots[0].right.absent());

  auto two = zip_match(s, parse("\\(x : A). b"), parse("\\(x : B). b"));
  ASSERT_TRUE(two.has_value());
  EXPECT_EQ(two->slots[0].right, Term::free("B"));
}

TEST(SignatureTest, OptionalPresenceMustAgreeWithoutOverride) {
  Signature::Builder b("opt");
  b.add_operator("O", {SlotKind::OptionalTerm});
  Signature s = b.build();
  EXPECT_FALSE(zip_match(s, s.make("O", {Term()}), s.make("O", {Term::free("a")}))
                   .has_value());
  EXPECT_TRUE(zip_match(s, s.make("O", {Term()}), s.make("O", {Term()})).has_value());
}

}  // namespace
}  // namespace soas
