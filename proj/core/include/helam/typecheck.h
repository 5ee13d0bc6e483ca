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

// Syntax-directed checker for the located type system. Injections and the
// projection/communication keywords get fresh unknowns for the parts of their
// type they leave open; those unknowns are solved by unification against the
// surrounding application, case or expected type. An unknown that survives
// into the final type is reported as kAmbiguousSum, except the payload type
// and sender-side owners of a bare `com`, which default to () and {sender}.

#ifndef HELAM_TYPECHECK_H_
#define HELAM_TYPECHECK_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "helam/ast.h"

namespace helam {

enum class TypeErrorKind {
  kUnboundVar,
  kMaskUndefined,
  kNotAFunction,
  kArgMismatch,
  kGuardNotSum,
  kBranchMismatch,
  kPartiesNotSubset,
  kSenderNotOwner,
  kPairComponentsDisjoint,
  kIndexOutOfRange,
  kNoopViolation,
  kAmbiguousSum,
};

std::string_view TypeErrorKindName(TypeErrorKind kind);

struct TypeError {
  TypeErrorKind kind;
  SourceSpan span;
  std::string detail;

  // "<kind> at <line:col>: <detail>"
  std::string ToString() const;
};

struct TypeEnv {
  std::vector<std::pair<std::string, ChorTypeP>> bindings;
  PartySet theta;
};

enum class TypingRule {
  kVar,
  kLambda,
  kApp,
  kCase,
  kUnit,
  kPair,
  kVec,
  kInl,
  kInr,
  kProj1,
  kProj2,
  kProjN,
  kCom,
};
inline constexpr size_t kNumTypingRules = 13;
std::string_view TypingRuleName(TypingRule rule);

struct RuleCoverage {
  std::array<uint64_t, kNumTypingRules> counts{};

  void Add(TypingRule r) { ++counts[static_cast<size_t>(r)]; }
  uint64_t operator[](TypingRule r) const {
    return counts[static_cast<size_t>(r)];
  }
};

struct TypeResult {
  ChorTypeP type;
  std::optional<TypeError> error;

  bool ok() const { return !error.has_value(); }
};

// Solved type of each expression and value node of a checked term. Nodes
// whose type is still open after checking the whole term are absent.
struct SubtermTypes {
  std::unordered_map<const Expr*, ChorTypeP> exprs;
  std::unordered_map<const Value*, ChorTypeP> values;
};

TypeResult Typecheck(const TypeEnv& env, const ExprP& e,
                     RuleCoverage* coverage = nullptr,
                     SubtermTypes* subterms = nullptr);

// Checks e against a known type; this is the judgement used when the type is
// already fixed, e.g. after a step or a substitution.
TypeResult TypecheckAgainst(const TypeEnv& env, const ExprP& e,
                            const ChorTypeP& expected,
                            RuleCoverage* coverage = nullptr,
                            SubtermTypes* subterms = nullptr);

// Owners of the outermost lambda if the program is one, else every party the
// program mentions.
PartySet DefaultTheta(const ExprP& program);

}  // namespace helam

#endif  // HELAM_TYPECHECK_H_
