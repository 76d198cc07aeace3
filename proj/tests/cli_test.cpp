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

#include "soas/cli.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace soas {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) {
  return std::string(SOAS_TEST_DATA_DIR) + "/data/" + name;
}

TEST(CliTest, InferPrintsAnnotatedTerm) {
  CliRun r = cli({"infer", "\\x. \\y. y"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "\\x. (\\y. y : ?m2[] -> ?m2[]) : ?m1[] -> (?m2[] -> ?m2[])\n");
}

TEST(CliTest, InferAstOutput) {
  CliRun r = cli({"--output", "ast", "infer", "\\x. x"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "(: (Lam _ (bound 0)) (Fun (?m1) (?m1)))\n");
}

TEST(CliTest, ReduceJ) {
  CliRun r = cli({"reduce", "--lang", "mltt", "J(A, a, C, (\\x. x) d, a, refl a)"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "d\n");
}

TEST(CliTest, ReduceDivergesWithinFuel) {
  CliRun r = cli({"reduce", "--lang", "ulc", "--reduce-fuel", "100", "(\\x. x x) (\\x. x x)"});
  EXPECT_EQ(r.code, kExitUndetermined);
}

TEST(CliTest, CheckForms) {
  EXPECT_EQ(cli({"check", "--lang", "mltt", "\\A. \\x. x", ":", "(A : U) -> (x : A) -> A"}).code,
            kExitOk);
  EXPECT_EQ(cli({"check", "\\x. x", "A -> A"}).code, kExitOk);
  CliRun bad = cli({"check", "\\x. x", "A -> B"});
  EXPECT_EQ(bad.code, kExitFailure);
  EXPECT_NE(bad.err.find("unification failure"), std::string::npos);
}

TEST(CliTest, DependencyDiagnostic) {
  CliRun r = cli({"check", "--lang", "stlc", "\\A. \\(x : A). x", ":", "?t[]"});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_NE(r.err.find("dependency escape"), std::string::npos);
}

TEST(CliTest, UnifyFiles) {
  CliRun pair = cli({"unify", data("pair.txt")});
  EXPECT_EQ(pair.code, kExitOk);
  EXPECT_EQ(pair.out, "?m[x1] := first x1\n");
  CliRun quantified = cli({"unify", data("quantified.txt")});
  EXPECT_EQ(quantified.out, "?m[x1] := x1\n");
  CliRun ff = cli({"unify", data("flexflex.txt")});
  EXPECT_EQ(ff.code, kExitOk);
  EXPECT_EQ(ff.out, "?m1[] =?= ?m2[]\n");
  CliRun shared = cli({"unify", data("shared.txt")});
  EXPECT_EQ(shared.out, "?a[] := f c\n?b[] := c\n");
}

TEST(CliTest, UnifyFailureAndUndetermined) {
  CliRun esc = cli({"unify", data("escape.txt")});
  EXPECT_EQ(esc.code, kExitFailure);
  EXPECT_NE(esc.err.find("no solution"), std::string::npos);
  CliRun loop = cli({"unify", "--lang", "ulc", "-"}, "(\\x. x x) (\\x. x x) =?= ?m[]\n");
  EXPECT_EQ(loop.code, kExitUndetermined);
}

TEST(CliTest, UnifyReadsStdin) {
  CliRun r = cli({"unify", "-"}, "# comment\n\n?m[<t1, t2>] =?= t2\n");
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "?m[x1] := second x1\n");
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(cli({}).code, kExitUsage);
  EXPECT_EQ(cli({"bogus"}).code, kExitUsage);
  EXPECT_EQ(cli({"infer", "--lang", "ulc", "x"}).code, kExitUsage);
  EXPECT_EQ(cli({"--lang", "coq", "reduce", "x"}).code, kExitUsage);
  EXPECT_EQ(cli({"infer", "\\x."}).code, kExitUsage);
  EXPECT_EQ(cli({"unify", data("missing.txt")}).code, kExitUsage);
  CliRun malformed = cli({"unify", data("malformed.txt")});
  EXPECT_EQ(malformed.code, kExitUsage);
  EXPECT_NE(malformed.err.find("2:9"), std::string::npos);
}

TEST(CliTest, Deterministic) {
  CliRun a = cli({"infer", "\\f. \\x. f (f x)"});
  CliRun b = cli({"infer", "\\f. \\x. f (f x)"});
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
}

}  // namespace
}  // namespace soas
