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

#include "helam/typecheck.h"

#include <string>

#include <gtest/gtest.h>

#include "helam/print.h"
#include "test_util.h"

namespace helam {
namespace {

using testing::Chor;
using testing::Parties;
using testing::Type;

TypeResult Check(std::string_view text, const PartySet& theta) {
  return Typecheck(TypeEnv{{}, theta}, Chor(text, theta));
}

std::string TypeOf(std::string_view text, const PartySet& theta) {
  TypeResult r = Check(text, theta);
  return r.ok() ? PrintType(*r.type) : r.error->ToString();
}

TypeErrorKind ErrorOf(std::string_view text, const PartySet& theta) {
  TypeResult r = Check(text, theta);
  EXPECT_FALSE(r.ok()) << text << " : " << PrintType(*r.type);
  return r.ok() ? TypeErrorKind::kAmbiguousSum : r.error->kind;
}

TEST(TypecheckTest, ApplicationMasksArgument) {
  EXPECT_EQ(TypeOf("(fn x: ()@[p]. x)@[p] ()@[p, q]", Parties({"p", "q"})),
            "()@[p]");
}

TEST(TypecheckTest, BareCom) {
  EXPECT_EQ(TypeOf("com[s][r]", Parties({"r", "s"})),
            "(()@[s] -> ()@[r])@[r, s]");
}

TEST(TypecheckTest, ComAppliedToData) {
  EXPECT_EQ(TypeOf("com[s][p, q] ()@[s]", Parties({"p", "q", "s"})),
            "()@[p, q]");
  EXPECT_EQ(TypeOf("com[s][r] (Pair ()@[s, t] ()@[s])",
                   Parties({"r", "s", "t"})),
            "(() * ())@[r]");
}

TEST(TypecheckTest, ComPayloadFromExpectedType) {
  ChorTypeP want = Type("((() + ())@[s] -> (() + ())@[r])@[r, s]");
  TypeResult r = TypecheckAgainst(TypeEnv{{}, Parties({"r", "s"})},
                                  Chor("com[s][r]", Parties({"r", "s"})), want);
  ASSERT_TRUE(r.ok()) << r.error->ToString();
  EXPECT_TRUE(TypeEqual(*r.type, *want));
}

TEST(TypecheckTest, KnowledgeOfChoiceGuardRejected) {
  TypeResult r = Check("case[p, q] Inl ()@[p] of Inl x => x; Inr y => y",
                       Parties({"p", "q"}));
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.error->kind, TypeErrorKind::kMaskUndefined);
}

TEST(TypecheckTest, KnowledgeOfChoiceAfterBroadcast) {
  EXPECT_EQ(TypeOf("case[p, q] com[p][p, q] (Inl ()@[p]) of "
                   "Inl x => ()@[p, q]; Inr y => ()@[p, q]",
                   Parties({"p", "q"})),
            "()@[p, q]");
}

TEST(TypecheckTest, CheckingInjections) {
  TypeEnv env{{}, Parties({"p"})};
  EXPECT_TRUE(TypecheckAgainst(env, Chor("Inl ()@[p]"),
                               Type("(() + () * ())@[p]"))
                  .ok());
  EXPECT_TRUE(
      TypecheckAgainst(env, Chor("Inr ()@[p]"), Type("(() + ())@[p]")).ok());
  EXPECT_FALSE(TypecheckAgainst(env, Chor("Inr ()@[p]"),
                                Type("(() + () * ())@[p]"))
                   .ok());
}

TEST(TypecheckTest, SynthesizedInjectionIsAmbiguous) {
  EXPECT_EQ(ErrorOf("Inl ()@[p]", Parties({"p"})), TypeErrorKind::kAmbiguousSum);
}

TEST(TypecheckTest, CaseBranchesFixInjections) {
  EXPECT_EQ(TypeOf("case[p] Inl ()@[p] of Inl x => x; Inr y => y",
                   Parties({"p"})),
            "()@[p]");
  EXPECT_EQ(TypeOf("let g : (() + ())@[p] = Inr ()@[p];\n"
                   "case[p] g of Inl x => Inl x; Inr y => Inr (Pair y y)",
                   Parties({"p"})),
            "(() + () * ())@[p]");
  EXPECT_EQ(ErrorOf("case[p] Inl ()@[p] of Inl x => Inl x; Inr y => Inr y",
                    Parties({"p"})),
            TypeErrorKind::kAmbiguousSum);
}

TEST(TypecheckTest, CaseMasksScrutineeToGuards) {
  EXPECT_EQ(TypeOf("case[p] Inl ()@[p, q] of Inl x => x; Inr y => y",
                   Parties({"p", "q"})),
            "()@[p]");
}

TEST(TypecheckTest, PairOwnersIntersect) {
  EXPECT_EQ(TypeOf("fst[p] (Pair ()@[p, q] ()@[p])", Parties({"p", "q"})),
            "()@[p]");
  EXPECT_EQ(ErrorOf("fst[p] (Pair ()@[p] ()@[q])", Parties({"p", "q"})),
            TypeErrorKind::kPairComponentsDisjoint);
}

TEST(TypecheckTest, Tuples) {
  EXPECT_EQ(TypeOf("lookup[2][q] (()@[p, q], ()@[q])", Parties({"p", "q"})),
            "()@[q]");
  EXPECT_EQ(ErrorOf("lookup[3][q] (()@[p, q], ()@[q])", Parties({"p", "q"})),
            TypeErrorKind::kIndexOutOfRange);
  EXPECT_EQ(ErrorOf("lookup[2][q] (()@[p], ()@[q])", Parties({"p", "q"})),
            TypeErrorKind::kMaskUndefined);
}

TEST(TypecheckTest, ErrorKinds) {
  PartySet pq = Parties({"p", "q"});
  EXPECT_EQ(ErrorOf("()@[p] ()@[p]", pq), TypeErrorKind::kNotAFunction);
  EXPECT_EQ(ErrorOf("(fn x: (() + ())@[p]. x)@[p] ()@[p]", pq),
            TypeErrorKind::kArgMismatch);
  EXPECT_EQ(ErrorOf("case[p] ()@[p] of Inl x => x; Inr y => y", pq),
            TypeErrorKind::kGuardNotSum);
  EXPECT_EQ(ErrorOf("case[p] Inl ()@[p] of Inl x => ()@[p]; "
                    "Inr y => Pair ()@[p] ()@[p]",
                    pq),
            TypeErrorKind::kBranchMismatch);
  EXPECT_EQ(ErrorOf("case[p] Inl ()@[p] of Inl x => ()@[p]; "
                    "Inr y => ()@[q]",
                    pq),
            TypeErrorKind::kPartiesNotSubset);
  EXPECT_EQ(ErrorOf("com[q][p] ()@[p]", pq), TypeErrorKind::kSenderNotOwner);
  EXPECT_EQ(ErrorOf("(fn x: ()@[p]. x)@[p] ()@[q]", pq),
            TypeErrorKind::kMaskUndefined);
  EXPECT_EQ(ErrorOf("()@[r]", pq), TypeErrorKind::kPartiesNotSubset);
  EXPECT_EQ(ErrorOf("(fn x: ()@[p, q]. x)@[p]", pq),
            TypeErrorKind::kNoopViolation);
}

TEST(TypecheckTest, UnboundVariable) {
  TypeResult r =
      Typecheck(TypeEnv{{}, Parties({"p"})}, Expr::Val(Value::Var("ghost")));
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.error->kind, TypeErrorKind::kUnboundVar);
}

TEST(TypecheckTest, VariablesMaskToTheta) {
  TypeEnv env{{{"x", Type("()@[p, q]")}}, Parties({"p"})};
  TypeResult r = Typecheck(env, Expr::Val(Value::Var("x")));
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(PrintType(*r.type), "()@[p]");
}

TEST(TypecheckTest, ErrorsPointAtTheOffendingNode) {
  DesugarResult d = LoadProgram(
      "let g : (() + ())@[p] = Inl ()@[p];\ncase[p, q] g of Inl x => ()@[q]; "
      "Inr y => ()@[q]",
      Parties({"p", "q"}));
  ASSERT_TRUE(d.ok());
  TypeResult r = Typecheck(TypeEnv{{}, d.theta}, d.expr);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.error->kind, TypeErrorKind::kMaskUndefined);
  EXPECT_EQ(r.error->span.line, 2);
  EXPECT_EQ(r.error->span.col, 12);
}

TEST(TypecheckTest, CoverageCounts) {
  RuleCoverage cov;
  TypeResult r = Typecheck(TypeEnv{{}, Parties({"p", "q"})},
                           Chor("com[p][q] (fst[p] (Pair ()@[p] ()@[p]))",
                                Parties({"p", "q"})),
                           &cov);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(cov[TypingRule::kCom], 1u);
  EXPECT_EQ(cov[TypingRule::kProj1], 1u);
  EXPECT_EQ(cov[TypingRule::kUnit], 2u);
  EXPECT_EQ(cov[TypingRule::kApp], 2u);
  EXPECT_EQ(cov[TypingRule::kCase], 0u);
}

TEST(TypecheckTest, DefaultThetaRule) {
  EXPECT_EQ(DefaultTheta(Chor("(fn x: ()@[a]. x)@[a, b]")), Parties({"a", "b"}));
  EXPECT_EQ(DefaultTheta(Chor("com[s][r] ()@[s]")), Parties({"r", "s"}));
}

TEST(TypecheckTest, RuleNames) {
  EXPECT_EQ(TypingRuleName(TypingRule::kCom), "TCOM");
  EXPECT_EQ(TypeErrorKindName(TypeErrorKind::kMaskUndefined), "MaskUndefined");
}

}  // namespace
}  // namespace helam
