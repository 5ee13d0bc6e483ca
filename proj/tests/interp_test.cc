// Copyright 2026 The helam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "helam/interp.h"

#include <string>

#include <gtest/gtest.h>

#include "helam/mask.h"
#include "helam/print.h"
#include "test_util.h"

namespace helam {
namespace {

using testing::Chor;
using testing::Parties;

std::string StepOnce(std::string_view text) {
  StepResult r = Step(Chor(text, Parties({"p", "q", "r", "s"})));
  EXPECT_TRUE(r.stepped()) << text << ": " << r.reason;
  return r.stepped() ? PrintExpr(*r.next) : "";
}

TEST(SubstTest, VariableHit) {
  ExprP out = Subst(Expr::Val(Value::Var("x")), "x", Value::Unit(Parties({"p"})));
  EXPECT_EQ(PrintExpr(*out), "()@[p]");
}

TEST(SubstTest, MasksIntoLambdaOwners) {
  ExprP lam = Chor("(fn y: ()@[p]. x)@[p]", Parties({"p", "q"}));
  ValueP v = Value::Unit(Parties({"p", "q"}));
  // Oracle: the value masked to the lambda's owners.
  std::optional<ValueP> masked = testing::RefMaskValue(v, Parties({"p"}));
  ASSERT_TRUE(masked);
  EXPECT_EQ(PrintExpr(*Subst(lam, "x", v)),
            "(fn y: ()@[p]. " + PrintValue(**masked) + ")@[p]");
}

TEST(SubstTest, UnmaskableLeavesLambdaAlone) {
  ExprP lam = Chor("(fn y: ()@[p]. x)@[p]", Parties({"p", "q"}));
  ValueP v = Chor("(fn z: ()@[q]. z)@[q]")->value;
  EXPECT_TRUE(ExprEqual(Subst(lam, "x", v), lam));
}

TEST(SubstTest, StopsAtShadowingBinder) {
  ExprP lam = Expr::Val(Value::Lambda("x", testing::Type("()@[p]"),
                                      Expr::Val(Value::Var("x")),
                                      Parties({"p"})));
  EXPECT_TRUE(ExprEqual(Subst(lam, "x", Value::Unit(Parties({"p"}))), lam));
}

TEST(StepTest, Examples) {
  EXPECT_EQ(StepOnce("com[s][p, q] ()@[s]"), "()@[p, q]");
  EXPECT_EQ(StepOnce("(fn x: ()@[p]. x)@[p] ()@[p, q]"), "()@[p]");
  EXPECT_EQ(StepOnce("com[s][r] (Inl ()@[s])"), "Inl ()@[r]");
  EXPECT_EQ(StepOnce("com[s][r] (Pair (Inr ()@[s]) ()@[s, p])"),
            "Pair (Inr ()@[r]) ()@[r]");
  EXPECT_EQ(StepOnce("snd[p] (Pair ()@[q, p] ()@[p])"), "()@[p]");
  EXPECT_EQ(StepOnce("lookup[2][p] (()@[q], ()@[p, q])"), "()@[p]");
}

TEST(StepTest, ProjectionMasksWithOracle) {
  ValueP comp = Value::Unit(Parties({"p", "q"}));
  std::optional<ValueP> want = testing::RefMaskValue(comp, Parties({"p"}));
  ASSERT_TRUE(want);
  EXPECT_EQ(StepOnce("fst[p] (Pair ()@[p, q] ()@[p])"), PrintValue(**want));
}

TEST(StepTest, RuleNames) {
  auto rule = [](std::string_view text) {
    return Step(Chor(text, Parties({"p", "q", "r", "s"}))).rule;
  };
  EXPECT_EQ(rule("com[s][r] ()@[s]"), "COM1");
  EXPECT_EQ(rule("com[s][r] (Inl ()@[s])"), "COMINL");
  EXPECT_EQ(rule("com[s][r] (Inr ()@[s])"), "COMINR");
  EXPECT_EQ(rule("com[s][r] (Pair ()@[s] ()@[s])"), "COMPAIR");
  EXPECT_EQ(rule("(fn x: ()@[p]. x)@[p] ()@[p]"), "APPABS");
  EXPECT_EQ(rule("case[p] Inl ()@[p] of Inl x => x; Inr y => y"), "CASEL");
  EXPECT_EQ(rule("case[p] Inr ()@[p] of Inl x => x; Inr y => y"), "CASER");
  EXPECT_EQ(rule("fst[p] (Pair ()@[p] ()@[p])"), "PROJ1");
  EXPECT_EQ(rule("snd[p] (Pair ()@[p] ()@[p])"), "PROJ2");
  EXPECT_EQ(rule("lookup[1][p] (()@[p],)"), "PROJN");
}

TEST(StepTest, LeftmostFunctionFirst) {
  ExprP e = Chor(
      "((fn f: (()@[p] -> ()@[p])@[p]. f)@[p] (fn z: ()@[p]. z)@[p]) "
      "(com[q][p] ()@[q])",
      Parties({"p", "q"}));
  StepResult r = Step(e);
  ASSERT_TRUE(r.stepped());
  EXPECT_EQ(r.rule, "APPABS");
  EXPECT_EQ(PrintExpr(*r.next),
            "(fn z: ()@[p]. z)@[p] (com[q][p] ()@[q])");
}

TEST(StepTest, ValuesAndStuckTerms) {
  EXPECT_EQ(Step(Chor("()@[p]")).kind, StepResult::Kind::kIsValue);
  EXPECT_EQ(Step(Chor("()@[p] ()@[p]")).kind, StepResult::Kind::kStuck);
}

TEST(ComValueTest, OnlyMovesSenderOwnedData) {
  ValueP v = Chor("Inl (Pair ()@[s] ()@[s, t])")->value;
  std::optional<ValueP> moved = ComValue(v, "s", Parties({"r"}));
  ASSERT_TRUE(moved);
  EXPECT_EQ(PrintValue(**moved), "Inl (Pair ()@[r] ()@[r])");
  EXPECT_FALSE(ComValue(v, "t2", Parties({"r"})).has_value());
  EXPECT_FALSE(ComValue(Value::Fst(Parties({"s"})), "s", Parties({"r"})));
}

TEST(RunTest, Examples) {
  EXPECT_EQ(PrintExpr(*helam::Run(Chor("()@[p]")).final_expr), "()@[p]");
  RunResult r = helam::Run(Chor("case[p] Inl ()@[p] of Inl x => x; Inr y => y"));
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(PrintExpr(*r.final_expr), "()@[p]");
  EXPECT_EQ(r.steps, 1u);
}

TEST(RunTest, FuelAndTrace) {
  ExprP e = Chor("com[q][p] (com[p][q] ()@[p])");
  RunResult starved = helam::Run(e, 1);
  EXPECT_EQ(starved.status, RunResult::Status::kFuelExhausted);
  RunResult full = helam::Run(e, 10, /*record_trace=*/true);
  ASSERT_TRUE(full.ok());
  EXPECT_EQ(full.steps, 2u);
  ASSERT_EQ(full.trace.size(), 2u);
  EXPECT_EQ(full.trace[0], "COM1 com[p][q] ()@[p]");
  EXPECT_EQ(PrintExpr(*full.final_expr), "()@[p]");
}

TEST(RunTest, StuckProgramReportsReason) {
  RunResult r = helam::Run(Chor("()@[p] ()@[p]"));
  EXPECT_EQ(r.status, RunResult::Status::kStuck);
  EXPECT_FALSE(r.reason.empty());
}

}  // namespace
}  // namespace helam
