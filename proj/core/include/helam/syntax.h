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

// Surface syntax: lexer, recursive-descent parser, let/temporary desugaring
// and binder uniquification.
//
//   program := alias* expr
//   alias   := ['type'] Name '=' data ';'
//   expr    := 'let' x [':' type] '=' expr ';' expr
//            | 'case' parties expr 'of' 'Inl' x '=>' expr ';' 'Inr' x '=>' expr
//            | app
//   app     := head atom*
//   head    := 'Inl' atom | 'Inr' atom | 'Pair' atom atom | atom
//   atom    := x | '()' '@' parties | '(' 'fn' x ':' type '.' expr ')' '@' parties
//            | '(' expr ')' | '(' expr ',' ')' | '(' expr (',' expr)+ ')'
//            | 'fst' parties | 'snd' parties | 'lookup' '[' n ']' parties
//            | 'com' '[' s ']' parties
//   type    := data '@' parties | '(' type '->' type ')' '@' parties
//            | '(' type ',' ')' | '(' type (',' type)+ ')'
//   data    := prod ('+' prod)* ;  prod := datom ('*' datom)*
//   datom   := '()' | '(' data ')' | Name

#ifndef HELAM_SYNTAX_H_
#define HELAM_SYNTAX_H_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "helam/ast.h"
#include "helam/typecheck.h"

namespace helam {

struct SExpr;
using SExprP = std::shared_ptr<const SExpr>;

// Parsed program before desugaring; constructor operands may be arbitrary
// expressions and `let` is still present.
struct SExpr {
  enum class Kind {
    kVar,
    kUnit,
    kLambda,
    kInl,
    kInr,
    kPair,
    kVec,
    kFst,
    kSnd,
    kLookup,
    kCom,
    kApp,
    kCase,
    kLet,
  };
  Kind kind = Kind::kUnit;
  std::string name;  // variable, binder, or com sender
  ChorTypeP type;    // lambda parameter; let annotation (may be null)
  PartySet parties;
  // kLambda: body. kInl/kInr/kPair/kVec: operands. kApp: fn, arg.
  // kCase: scrutinee, left, right. kLet: bound, body.
  std::vector<SExprP> kids;
  int index = 0;
  std::string left_var;
  std::string right_var;
  SourceSpan span;
};

struct SurfaceProgram {
  std::map<std::string, DataTypeP> aliases;
  SExprP body;
};

struct SyntaxError {
  enum class Kind { kParse, kDesugar };
  Kind kind = Kind::kParse;
  SourceSpan span;
  std::string message;

  std::string ToString() const;
};

struct ParseResult {
  std::optional<SurfaceProgram> program;
  std::optional<SyntaxError> error;
};

ParseResult ParseProgram(std::string_view text);

// Parses a standalone type, e.g. for a --theta style CLI option or tests.
std::optional<ChorTypeP> ParseType(std::string_view text,
                                   std::string* error = nullptr);

struct DesugarResult {
  ExprP expr;
  PartySet theta;
  std::optional<SyntaxError> error;
  // A rejection found while inferring a let binding's type.
  std::optional<TypeError> type_error;

  bool ok() const { return !error && !type_error; }
};

// Each `let` becomes a lambda owned by the enclosing participants (the
// nearest lambda owners or case guards, else `theta`), typed by its
// annotation or by the checker. With no theta, the program's own default is
// used: the outermost lambda's owners, else every party it mentions.
DesugarResult Desugar(const SurfaceProgram& program,
                      std::optional<PartySet> theta = std::nullopt);

// Renames binders so that they are pairwise distinct and distinct from the
// free variables, using `x`, `x$1`, `x$2`, ... .
ExprP Uniquify(const ExprP& e);

// Parse, desugar and uniquify.
DesugarResult LoadProgram(std::string_view text,
                          std::optional<PartySet> theta = std::nullopt);

}  // namespace helam

#endif  // HELAM_SYNTAX_H_
