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

#include "helam/gen.h"

#include <functional>
#include <string>

#include <gtest/gtest.h>

#include "helam/print.h"
#include "helam/syntax.h"
#include "test_util.h"

namespace helam {
namespace {

using testing::Chor;
using testing::Parties;
using testing::Type;

bool UsesCom(const Expr& e);

bool UsesCom(const Value& v) {
  if (v.kind == Value::Kind::kCom) return true;
  if (v.kind == Value::Kind::kLambda && UsesCom(*v.body)) return true;
  for (const ValueP& c : v.elems) {
    if (UsesCom(*c)) return true;
  }
  return false;
}

bool UsesCom(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::kVal:
      return UsesCom(*e.value);
    case Expr::Kind::kApp:
      return UsesCom(*e.fn) || UsesCom(*e.arg);
    case Expr::Kind::kCase:
      return UsesCom(*e.arg) || UsesCom(*e.left) || UsesCom(*e.right);
  }
  return false;
}

TEST(GeneratorTest, DepthOneGivesValue) {
  GenConfig cfg;
  cfg.max_depth = 1;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    ExprP e = GenWellTyped(cfg, Parties({"p"}), Type("()@[p]"), seed);
    EXPECT_EQ(PrintExpr(*e), "()@[p]");
  }
}

TEST(GeneratorTest, CanEmitCommunication) {
  GenConfig cfg;
  cfg.max_depth = 3;
  bool found = false;
  for (uint64_t seed = 0; seed < 200 && !found; ++seed) {
    ExprP e = GenWellTyped(cfg, Parties({"r", "s"}), Type("()@[r]"), seed);
    found = PrintExpr(*e) == "com[s][r] ()@[s]";
  }
  EXPECT_TRUE(found);
}

TEST(GeneratorTest, TargetOutsideThetaThrows) {
  EXPECT_THROW(GenWellTyped(GenConfig{}, Parties({"p"}), Type("()@[q]"), 1),
               GenerationExhausted);
}

TEST(GeneratorTest, Deterministic) {
  GenConfig cfg;
  for (uint64_t seed : {3u, 99u, 12345u}) {
    GenInstance a = GenWellTyped(cfg, seed);
    GenInstance b = GenWellTyped(cfg, seed);
    EXPECT_TRUE(ExprEqual(a.expr, b.expr));
    EXPECT_TRUE(TypeEqual(a.type, b.type));
    EXPECT_EQ(a.theta, b.theta);
  }
}

TEST(GeneratorTest, EveryInstanceTypechecks) {
  GenConfig cfg;
  RuleCoverage cov;
  size_t values = 0;
  for (uint64_t seed = 1; seed <= 1000; ++seed) {
    GenInstance g = GenWellTyped(cfg, seed);
    ASSERT_GE(g.theta.size(), 2u);
    ASSERT_LE(g.theta.size(), 4u);
    TypeResult r = TypecheckAgainst(TypeEnv{{}, g.theta}, g.expr, g.type, &cov);
    ASSERT_TRUE(r.ok()) << "seed " << seed << ": " << r.error->ToString()
                        << "\n"
                        << PrintExpr(*g.expr);
    EXPECT_TRUE(FreeVars(*g.expr).empty());
    values += g.expr->is_value() ? 1 : 0;
  }
  for (size_t i = 0; i < kNumTypingRules; ++i) {
    EXPECT_GT(cov.counts[i], 0u)
        << TypingRuleName(static_cast<TypingRule>(i));
  }
  EXPECT_LT(values, 300u);
}

TEST(CanonicalValueTest, Shapes) {
  PartySet pq = Parties({"p", "q"});
  auto canon = [&](std::string_view t) {
    std::optional<ValueP> v = CanonicalValue(Type(t), pq);
    return v ? PrintValue(**v) : "none";
  };
  EXPECT_EQ(canon("(() + () + ())@[p]"), "Inl (Inl ()@[p])");
  EXPECT_EQ(canon("(() * (() + ()))@[p, q]"), "Pair ()@[p, q] (Inl ()@[p, q])");
  EXPECT_EQ(canon("(()@[p], ()@[q])"), "(()@[p], ()@[q])");
  EXPECT_EQ(canon("(()@[p] -> ()@[q])@[p, q]"), "(fn _: ()@[p]. ()@[q])@[p, q]");
  EXPECT_EQ(canon("(()@[q] -> ()@[p])@[p]"), "none");
}

TEST(ShrinkTest, FindsMinimalCommunication) {
  GenConfig cfg;
  size_t shrunk = 0;
  for (uint64_t seed = 1; seed <= 400 && shrunk < 10; ++seed) {
    GenInstance g = GenWellTyped(cfg, seed);
    if (ExprSize(*g.expr) < 20 || !UsesCom(*g.expr)) continue;
    auto failing = [](const ExprP& e) { return UsesCom(*e); };
    ExprP small = Shrink(g.expr, g.theta, g.type, failing);
    EXPECT_TRUE(UsesCom(*small));
    EXPECT_LT(ExprSize(*small), ExprSize(*g.expr));
    EXPECT_TRUE(ExprEqual(Shrink(small, g.theta, g.type, failing), small));
    TypeResult r = TypecheckAgainst(TypeEnv{{}, g.theta}, small, g.type);
    EXPECT_TRUE(r.ok()) << PrintExpr(*small);
    ++shrunk;
  }
  EXPECT_EQ(shrunk, 10u);
}

TEST(ShrinkTest, ReducesToSingleCom) {
  PartySet theta = Parties({"r", "s"});
  ExprP e = Chor(
      "(fn x: ()@[r]. x)@[r, s] ((fn y: ()@[s]. com[s][r] y)@[r, s] ()@[s])",
      theta);
  auto failing = [](const ExprP& x) { return UsesCom(*x); };
  ExprP small = Shrink(e, theta, Type("()@[r]"), failing);
  EXPECT_EQ(PrintExpr(*small), "com[s][r] ()@[s]");
}

TEST(ShrinkTest, MinimalInputUnchanged) {
  PartySet theta = Parties({"p"});
  ExprP e = Expr::Val(Value::Unit(theta));
  ExprP out = Shrink(e, theta, Type("()@[p]"), [](const ExprP&) { return true; });
  EXPECT_TRUE(ExprEqual(out, e));
}

TEST(ShrinkTest, ResultAlwaysTypechecks) {
  GenConfig cfg;
  for (uint64_t seed = 500; seed < 560; ++seed) {
    GenInstance g = GenWellTyped(cfg, seed);
    size_t original = ExprSize(*g.expr);
    auto failing = [original](const ExprP& e) {
      return ExprSize(*e) * 2 >= original;
    };
    ExprP small = Shrink(g.expr, g.theta, g.type, failing);
    EXPECT_TRUE(failing(small));
    TypeResult r = TypecheckAgainst(TypeEnv{{}, g.theta}, small, g.type);
    EXPECT_TRUE(r.ok()) << "seed " << seed << ": " << PrintExpr(*small);
  }
}

TEST(RoundTripTest, GeneratedTerms) {
  GenConfig cfg;
  for (uint64_t seed = 1; seed <= 1000; ++seed) {
    GenInstance g = GenWellTyped(cfg, seed);
    std::string text = PrintExpr(*g.expr);
    ParseResult p = ParseProgram(text);
    ASSERT_TRUE(p.program) << p.error->ToString() << "\n" << text;
    DesugarResult d = Desugar(*p.program, g.theta);
    ASSERT_TRUE(d.ok()) << text;
    EXPECT_TRUE(ExprEqual(d.expr, g.expr)) << text;
    EXPECT_EQ(PrintExpr(*d.expr), text);
  }
}

}  // namespace
}  // namespace helam
