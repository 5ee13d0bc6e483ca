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

#include "helam/mask.h"

#include <random>
#include <string>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "helam/gen.h"
#include "helam/print.h"
#include "test_util.h"

namespace helam {
namespace {

using testing::Chor;
using testing::Parties;
using testing::Type;

std::string MaskedType(std::string_view t, const PartySet& theta) {
  std::optional<ChorTypeP> m = MaskType(Type(t), theta);
  return m ? PrintType(**m) : "undefined";
}

std::string MaskedValue(std::string_view v, const PartySet& theta) {
  ExprP e = Chor(v, Parties({"p", "q", "r", "s"}));
  std::optional<ValueP> m = MaskValue(e->value, theta);
  return m ? PrintValue(**m) : "undefined";
}

TEST(MaskTypeTest, DataIntersects) {
  EXPECT_EQ(MaskedType("()@[p, q]", Parties({"p"})), "()@[p]");
  EXPECT_EQ(MaskedType("()@[p]", Parties({"p"})), "()@[p]");
  EXPECT_EQ(MaskedType("()@[p]", Parties({"q"})), "undefined");
}

TEST(MaskTypeTest, FunctionsNeedAllOwners) {
  EXPECT_EQ(MaskedType("(()@[p] -> ()@[p])@[p]", Parties({"q"})), "undefined");
  EXPECT_EQ(MaskedType("(()@[p] -> ()@[p])@[p]", Parties({"p", "q"})),
            "(()@[p] -> ()@[p])@[p]");
  EXPECT_EQ(MaskedType("(()@[p] -> ()@[p])@[p, q]", Parties({"p"})),
            "undefined");
}

TEST(MaskTypeTest, TuplesMaskElementwise) {
  EXPECT_EQ(MaskedType("(()@[p, q], ()@[q])", Parties({"q"})),
            "(()@[q], ()@[q])");
  EXPECT_EQ(MaskedType("(()@[p, q], ()@[q])", Parties({"p"})), "undefined");
}

TEST(MaskTypeTest, NoopCheck) {
  EXPECT_TRUE(MaskIsNoop(Type("()@[p]"), Parties({"p", "q"})));
  EXPECT_FALSE(MaskIsNoop(Type("()@[p, q]"), Parties({"p"})));
  EXPECT_FALSE(MaskIsNoop(Type("()@[r]"), Parties({"p"})));
}

TEST(MaskValueTest, Examples) {
  EXPECT_EQ(MaskedValue("()@[p, q]", Parties({"q"})), "()@[q]");
  EXPECT_EQ(MaskedValue("com[s][r]", Parties({"r", "s"})), "com[s][r]");
  EXPECT_EQ(MaskedValue("com[s][r]", Parties({"r"})), "undefined");
  EXPECT_EQ(MaskedValue("com[s][r]", Parties({"s"})), "undefined");
  EXPECT_EQ(MaskedValue("Pair ()@[p] ()@[q]", Parties({"p"})), "undefined");
  EXPECT_EQ(MaskedValue("Inl (Pair ()@[p, q] ()@[p])", Parties({"p"})),
            "Inl (Pair ()@[p] ()@[p])");
  EXPECT_EQ(MaskedValue("fst[p, q]", Parties({"p"})), "undefined");
  EXPECT_EQ(MaskedValue("lookup[1][p]", Parties({"p", "q"})), "lookup[1][p]");
  EXPECT_EQ(MaskedValue("(fn x: ()@[p]. x)@[p]", Parties({"q"})), "undefined");
}

TEST(MaskValueTest, VariablesPassThrough) {
  ValueP x = Value::Var("x");
  std::optional<ValueP> m = MaskValue(x, Parties({"p"}));
  ASSERT_TRUE(m.has_value());
  EXPECT_TRUE(ValueEqual(**m, *x));
}

// Generated (type, value, theta) triples against the reference restriction.
TEST(MaskPropertyTest, MatchesReference) {
  GenConfig cfg;
  cfg.max_depth = 2;
  size_t compared = 0, defined = 0;
  for (uint64_t seed = 1; seed <= 3000; ++seed) {
    Generator g(cfg, seed);
    PartySet theta = g.GenTheta();
    std::vector<std::pair<std::string, ChorTypeP>> gamma;
    ChorTypeP t = g.GenType(theta, 3);
    ValueP v = g.GenValue(theta, t, 1, gamma);
    std::vector<PartyName> pick;
    for (const PartyName& p : theta) {
      if (g.rng()() % 2) pick.push_back(p);
    }
    if (pick.empty()) pick.push_back(theta.members().back());
    PartySet sub = PartySet::Of(pick);

    std::optional<ChorTypeP> got_t = MaskType(t, sub);
    std::optional<ChorTypeP> want_t = testing::RefMaskType(t, sub);
    ASSERT_EQ(got_t.has_value(), want_t.has_value())
        << "seed " << seed << ": " << PrintType(*t) << " to " << sub.ToString();
    if (got_t) {
      EXPECT_TRUE(TypeEqual(*got_t, *want_t)) << "seed " << seed;
      ++defined;
    }
    std::optional<ValueP> got_v = MaskValue(v, sub);
    std::optional<ValueP> want_v = testing::RefMaskValue(v, sub);
    ASSERT_EQ(got_v.has_value(), want_v.has_value())
        << "seed " << seed << ": " << PrintValue(*v) << " to "
        << sub.ToString();
    if (got_v) EXPECT_TRUE(ValueEqual(**got_v, **want_v)) << "seed " << seed;
    ++compared;
  }
  EXPECT_EQ(compared, 3000u);
  // Both outcomes must be exercised.
  EXPECT_GT(defined, 300u);
  EXPECT_LT(defined, 2700u);
}

}  // namespace
}  // namespace helam
