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

#include "helam/ast.h"

#include <set>
#include <string>

#include <gtest/gtest.h>

#include "helam/print.h"
#include "test_util.h"

namespace helam {
namespace {

using testing::Chor;
using testing::Parties;

ChorTypeP UnitAt(std::initializer_list<std::string_view> ps) {
  return ChorType::Data(DataType::Unit(), PartySet::Of(ps));
}

TEST(FreeVarsTest, LoneVariable) {
  EXPECT_EQ(FreeVars(*Expr::Val(Value::Var("x"))), std::set<std::string>{"x"});
}

TEST(FreeVarsTest, BinderCloses) {
  ValueP id = Value::Lambda("x", UnitAt({"p"}), Expr::Val(Value::Var("x")),
                            Parties({"p"}));
  EXPECT_TRUE(FreeVars(*id).empty());
}

TEST(FreeVarsTest, UnboundBody) {
  ValueP k = Value::Lambda("x", UnitAt({"p"}), Expr::Val(Value::Var("y")),
                           Parties({"p"}));
  EXPECT_EQ(FreeVars(*k), std::set<std::string>{"y"});
}

TEST(FreeVarsTest, CaseBindersScopeOverTheirBranch) {
  ExprP e = Expr::Case(Parties({"p"}), Expr::Val(Value::Var("g")), "a",
                       Expr::Val(Value::Var("b")), "b",
                       Expr::Val(Value::Var("a")));
  EXPECT_EQ(FreeVars(*e), (std::set<std::string>{"a", "b", "g"}));
}

TEST(PrintTest, Unit) {
  EXPECT_EQ(PrintValue(*Value::Unit(Parties({"q", "p"}))), "()@[p, q]");
}

TEST(PrintTest, Com) {
  EXPECT_EQ(PrintValue(*Value::Com("s", Parties({"r1"}))), "com[s][r1]");
}

TEST(PrintTest, FunctionType) {
  ChorTypeP t = ChorType::Fun(UnitAt({"p"}), UnitAt({"p"}), Parties({"p"}));
  EXPECT_EQ(PrintType(*t), "(()@[p] -> ()@[p])@[p]");
}

TEST(PrintTest, TupleTypesAndValues) {
  ChorTypeP one = ChorType::Tuple({UnitAt({"p"})});
  EXPECT_EQ(PrintType(*one), "(()@[p],)");
  ChorTypeP two = ChorType::Tuple({UnitAt({"p"}), UnitAt({"q"})});
  EXPECT_EQ(PrintType(*two), "(()@[p], ()@[q])");
  ValueP v = Value::Vec({Value::Unit(Parties({"p"}))});
  EXPECT_EQ(PrintValue(*v), "(()@[p],)");
}

TEST(PrintTest, SumsAssociateLeft) {
  DataTypeP u = DataType::Unit();
  EXPECT_EQ(PrintData(*DataType::Sum(DataType::Sum(u, u), u)), "() + () + ()");
  EXPECT_EQ(PrintData(*DataType::Sum(u, DataType::Sum(u, u))),
            "() + (() + ())");
  EXPECT_EQ(PrintData(*DataType::Prod(DataType::Sum(u, u), u)),
            "(() + ()) * ()");
}

TEST(PrintTest, NestedCaseInLeftBranch) {
  ExprP e = Chor(
      "case[p] Inl ()@[p] of Inl x => (case[p] Inl ()@[p] of Inl a => ()@[p]; "
      "Inr b => ()@[p]); Inr y => ()@[p]",
      Parties({"p"}));
  std::string text = PrintExpr(*e);
  EXPECT_TRUE(ExprEqual(Chor(text, Parties({"p"})), e)) << text;
}

TEST(StructureTest, EqualityIgnoresSpans) {
  ValueP a = Value::Unit(Parties({"p"}), SourceSpan{0, 3, 1, 1});
  ValueP b = Value::Unit(Parties({"p"}), SourceSpan{5, 8, 2, 4});
  EXPECT_TRUE(ValueEqual(*a, *b));
  EXPECT_FALSE(ValueEqual(*a, *Value::Unit(Parties({"q"}))));
}

TEST(StructureTest, Sizes) {
  ExprP e = Expr::App(Expr::Val(Value::Com("s", Parties({"r"}))),
                      Expr::Val(Value::Unit(Parties({"s"}))));
  EXPECT_EQ(ExprSize(*e), 3u);
  EXPECT_EQ(ValueSize(*Value::Pair(Value::Unit(Parties({"p"})),
                                   Value::Unit(Parties({"p"})))),
            3u);
}

TEST(StructureTest, DataValues) {
  ValueP u = Value::Unit(Parties({"p"}));
  EXPECT_TRUE(IsDataValue(*Value::Inl(Value::Pair(u, u))));
  EXPECT_FALSE(IsDataValue(*Value::Var("x")));
  EXPECT_FALSE(IsDataValue(*Value::Vec({u})));
}

TEST(StructureTest, TypeParties) {
  std::set<PartyName> out;
  CollectTypeParties(
      *ChorType::Tuple({UnitAt({"a"}),
                        ChorType::Fun(UnitAt({"b"}), UnitAt({"c"}),
                                      Parties({"b", "c"}))}),
      out);
  EXPECT_EQ(out, (std::set<PartyName>{"a", "b", "c"}));
}

}  // namespace
}  // namespace helam
