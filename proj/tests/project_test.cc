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

#include "helam/project.h"

#include <string>

#include <gtest/gtest.h>

#include "helam/print.h"
#include "test_util.h"

namespace helam {
namespace {

using testing::Chor;
using testing::Parties;

LocalValueP Bot() { return LocalValue::Bottom(); }
BehaviorP B(LocalValueP v) { return Behavior::Val(std::move(v)); }

std::string ProjectText(std::string_view text, const PartyName& p) {
  return PrintBehavior(*Project(Chor(text), p));
}

TEST(RolesTest, Examples) {
  EXPECT_EQ(Roles(Chor("com[s][p, q] ()@[s]")), Parties({"p", "q", "s"}));
  EXPECT_EQ(Roles(Chor("()@[p]")), Parties({"p"}));
  EXPECT_EQ(Roles(Chor("(fn x: ()@[a]. x)@[b]")), Parties({"a", "b"}));
}

TEST(FloorTest, Collapses) {
  EXPECT_TRUE(Floor(B(LocalValue::Pair(Bot(), Bot())))->is_bottom());
  EXPECT_TRUE(Floor(Behavior::App(B(Bot()), B(LocalValue::Unit())))
                  ->is_bottom());
  EXPECT_TRUE(Floor(B(LocalValue::Inl(Bot())))->is_bottom());
  EXPECT_TRUE(Floor(B(LocalValue::Vec({Bot(), Bot()})))->is_bottom());
  EXPECT_TRUE(
      Floor(Behavior::Case(B(Bot()), "a", B(Bot()), "b", B(Bot())))->is_bottom());
}

TEST(FloorTest, Keeps) {
  BehaviorP recv = Behavior::App(B(LocalValue::Recv("s")), B(Bot()));
  EXPECT_TRUE(BehaviorEqual(Floor(recv), recv));
  EXPECT_EQ(PrintBehavior(*Floor(recv)), "recv[s] bot");
  BehaviorP mixed = B(LocalValue::Pair(LocalValue::Unit(), Bot()));
  EXPECT_TRUE(BehaviorEqual(Floor(mixed), mixed));
  BehaviorP mixed_vec = B(LocalValue::Vec({Bot(), LocalValue::Unit()}));
  EXPECT_TRUE(BehaviorEqual(Floor(mixed_vec), mixed_vec));
}

TEST(FloorTest, NestedAndIdempotent) {
  BehaviorP b = B(LocalValue::Inr(LocalValue::Pair(Bot(), LocalValue::Inl(Bot()))));
  BehaviorP once = Floor(b);
  EXPECT_TRUE(once->is_bottom());
  EXPECT_TRUE(BehaviorEqual(Floor(once), once));
}

TEST(ProjectTest, ComExample) {
  EXPECT_EQ(ProjectText("com[s][p, q] ()@[s]", "s"), "send[p, q] ()");
  EXPECT_EQ(ProjectText("com[s][p, q] ()@[s]", "p"), "recv[s] bot");
  EXPECT_EQ(ProjectText("com[s][s, q] ()@[s]", "s"), "send*[q] ()");
  EXPECT_EQ(ProjectText("com[s][s] ()@[s]", "s"), "send*[] ()");
}

TEST(ProjectTest, Cruft) {
  EXPECT_EQ(ProjectText("()@[p, q]", "r"), "bot");
}

TEST(ProjectTest, OwnersAgree) {
  std::string p = ProjectText("()@[p, q]", "p");
  EXPECT_EQ(p, "()");
  EXPECT_EQ(ProjectText("()@[p, q]", "q"), p);
}

TEST(ProjectTest, CaseAtNonGuard) {
  ExprP e = Chor(
      "case[p] Inl ()@[p] of Inl x => com[p][q] x; Inr y => com[p][q] y");
  EXPECT_EQ(PrintBehavior(*Project(e, "p")),
            "case (Inl ()) of Inl x => send[q] x; Inr y => send[q] y");
  // q does not guard, and the scrutinee is p's alone.
  EXPECT_EQ(PrintBehavior(*Project(e, "q")), "bot");
}

TEST(ProjectTest, LambdaAndKeywords) {
  EXPECT_EQ(ProjectText("(fn x: ()@[p]. x)@[p]", "p"), "(fn x. x)");
  EXPECT_EQ(ProjectText("(fn x: ()@[p]. x)@[p]", "q"), "bot");
  EXPECT_EQ(ProjectText("fst[p, q] (Pair ()@[p] ()@[p, q])", "q"),
            "fst (Pair bot ())");
  EXPECT_EQ(ProjectText("lookup[2][q] (()@[p, q], ()@[q])", "p"), "bot");
  EXPECT_EQ(ProjectText("lookup[2][q] (()@[p], ()@[q])", "q"),
            "lookup[2] (bot, ())");
}

TEST(ProjectAllTest, Examples) {
  Network n = ProjectAll(Chor("com[s][p, q] ()@[s]"));
  ASSERT_EQ(n.size(), 3u);
  EXPECT_EQ(PrintBehavior(*n.at("s")), "send[p, q] ()");
  EXPECT_EQ(PrintBehavior(*n.at("p")), "recv[s] bot");
  EXPECT_EQ(PrintBehavior(*n.at("q")), "recv[s] bot");

  Network single = ProjectAll(Chor("()@[p]"));
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(PrintBehavior(*single.at("p")), "()");
}

TEST(LocalSubstTest, ReplacesFreeOccurrences) {
  BehaviorP b = Behavior::App(B(LocalValue::Var("x")),
                              B(LocalValue::Lambda("x", B(LocalValue::Var("x")))));
  BehaviorP out = LocalSubst(b, "x", LocalValue::Unit());
  EXPECT_EQ(PrintBehavior(*out), "() (fn x. x)");
}

}  // namespace
}  // namespace helam
