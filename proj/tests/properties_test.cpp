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

// Randomized invariant checks. Seeds are fixed so failures reproduce.

#include <gtest/gtest.h>

#include "soas/languages.hpp"
#include "soas/metavar.hpp"
#include "soas/reduction.hpp"
#include "soas/syntax.hpp"
#include "test_util.hpp"

namespace soas {
namespace {

using testing::TermGen;

const Signature& lam() { return ulc().signature(); }

// Entries for q0..q2 with matching arities, each body closed over its holes.
MetaSubstitution random_substs(TermGen& gen, const std::string& prefix = "q") {
  MetaSubstitution s;
  for (std::size_t k = 0; k < 3; ++k) {
    if (gen.coin(0.6)) s.insert(prefix + std::to_string(k), MetaAbs{k, gen.body(3, k)});
  }
  return s;
}

TEST(PropertyTest, WhnfIsIdempotent) {
  TermGen gen(1);
  std::size_t checked = 0;
  for (int i = 0; i < 1000; ++i) {
    Term t = gen.ulc(6, 0);
    Term once;
    try {
      once = reduce(ulc().reducer(), t);
    } catch (const FuelExhausted&) {
      continue;
    }
    ASSERT_EQ(reduce(ulc().reducer(), once), once) << print_term(t);
    ++checked;
  }
  EXPECT_GT(checked, 950u);
}

TEST(PropertyTest, OperationsPreserveScoping) {
  TermGen gen(2);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t depth = gen.pick(3);
    Term t = gen.ulc(5, depth);
    ASSERT_TRUE(well_scoped(lam(), t, depth));
    Term out;
    std::size_t out_depth = depth;
    switch (i % 7) {
      case 0:
        out = weaken(t);
        out_depth = depth + 1;
        break;
      case 1:
        if (depth == 0) {
          out = instantiate(t, gen.ulc(3, 0));
        } else {
          out = instantiate(t, gen.ulc(3, depth - 1));
          out_depth = depth - 1;
        }
        break;
      case 2:
        try {
          out = reduce(ulc().reducer(), t);
        } catch (const FuelExhausted&) {
          out = t;
        }
        break;
      case 3:
        out = apply_substs(random_substs(gen), t);
        break;
      case 4:
        out = substitute_free({{"a", gen.ulc(3, 0)}, {"b", Term::free("c")}}, t);
        break;
      case 5:
        out = erase_annotations(t);
        break;
      default:
        if (auto s = strengthen(t)) {
          out = *s;
          out_depth = depth == 0 ? 0 : depth - 1;
        } else {
          out = t;
        }
        break;
    }
    ASSERT_TRUE(well_scoped(lam(), out, out_depth)) << i << ": " << print_term(t);
  }
}

TEST(PropertyTest, WeakenThenInstantiateCancels) {
  TermGen gen(3);
  for (int i = 0; i < 500; ++i) {
    const std::size_t depth = gen.pick(3);
    Term t = gen.ulc(5, depth);
    ASSERT_EQ(instantiate(weaken(t), gen.ulc(2, depth)), t);
    auto back = strengthen(weaken(t));
    ASSERT_TRUE(back.has_value());
    ASSERT_EQ(*back, t);
  }
}

TEST(PropertyTest, EmptySubstitutionIsIdentity) {
  TermGen gen(4);
  const MetaSubstitution empty;
  for (int i = 0; i < 500; ++i) {
    Term t = gen.ulc(6, gen.pick(3));
    ASSERT_EQ(apply_substs(empty, t), t);
  }
}

TEST(PropertyTest, ExtendComposes) {
  TermGen gen(5);
  for (int i = 0; i < 500; ++i) {
    Term t = gen.ulc(5, gen.pick(3));
    // Bodies of the first substitution mention ?r, which the second solves.
    MetaSubstitution first;
    for (const auto& [id, abs] : random_substs(gen)) {
      first.insert(id, MetaAbs{abs.arity, lam().make("App", {abs.body, Term::meta("r", {})})});
    }
    MetaSubstitution second;
    second.insert("r", MetaAbs{0, gen.body(2, 0)});
    for (std::size_t k = 0; k < 3; ++k) {
      const std::string id = "q" + std::to_string(k);
      if (!first.contains(id) && gen.coin()) second.insert(id, MetaAbs{k, gen.body(2, k)});
    }
    MetaSubstitution both = extend_substs(first, second);
    ASSERT_EQ(apply_substs(both, t), apply_substs(second, apply_substs(first, t)))
        << print_term(t);
  }
}

// A projection-only reducer, handling First and Second on pairs.
Reducer projections() {
  return Reducer{{"First", "Second"}, [](const Term& node, const Recurse& reduce) {
                   Term pair = reduce(node.child(0));
                   if (!pair.has_tag("Pair")) return node.with_children({pair});
                   return reduce(pair.child(node.has_tag("First") ? 0 : 1));
                 }};
}

Reducer beta() {
  return Reducer{{"App"}, [](const Term& node, const Recurse& reduce) {
                   Term fn = reduce(node.child(0));
                   if (!fn.has_tag("Lam")) return node.with_children({fn, node.child(1)});
                   return reduce(instantiate(fn.children().back(), node.child(1)));
                 }};
}

Term stlc_term(TermGen& gen, std::size_t depth, std::size_t scope) {
  const Signature& sig = stlc().signature();
  if (depth == 0 || gen.coin(0.2)) {
    if (scope > 0 && gen.coin()) return Term::bound(gen.pick(scope));
    return Term::free(gen.free_name());
  }
  switch (gen.pick(5)) {
    case 0:
      return sig.make("Lam", {Term(), stlc_term(gen, depth - 1, scope + 1)});
    case 1:
      return sig.make("App", {stlc_term(gen, depth - 1, scope), stlc_term(gen, depth - 1, scope)});
    case 2:
      return sig.make("Pair", {stlc_term(gen, depth - 1, scope), stlc_term(gen, depth - 1, scope)});
    case 3:
      return sig.make("First", {stlc_term(gen, depth - 1, scope)});
    default:
      return sig.make("Second", {stlc_term(gen, depth - 1, scope)});
  }
}

TEST(PropertyTest, SumOfReducersCommutes) {
  TermGen gen(6);
  const Reducer left = sum_reduce(beta(), projections());
  const Reducer right = sum_reduce(projections(), beta());
  std::size_t compared = 0;
  for (int i = 0; i < 500; ++i) {
    Term t = stlc_term(gen, 6, 0);
    try {
      Term a = reduce(left, t);
      ASSERT_EQ(a, reduce(right, t)) << print_term(t);
      ASSERT_EQ(a, reduce(stlc().reducer(), t)) << print_term(t);
      ++compared;
    } catch (const FuelExhausted&) {
    }
  }
  EXPECT_GT(compared, 450u);
}

TEST(PropertyTest, UnitOfSum) {
  TermGen gen(7);
  const Reducer with_unit = sum_reduce(empty_reduce(), ulc().reducer());
  for (int i = 0; i < 200; ++i) {
    Term t = gen.ulc(5, 0, false);
    try {
      ASSERT_EQ(reduce(with_unit, t), reduce(ulc().reducer(), t));
    } catch (const FuelExhausted&) {
    }
  }
}

}  // namespace
}  // namespace soas
