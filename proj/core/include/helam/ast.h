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

// Choreography syntax trees. Nodes are immutable and shared through
// shared_ptr<const T>; rewriting passes rebuild only the spine they touch.

#ifndef HELAM_AST_H_
#define HELAM_AST_H_

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "helam/party.h"

namespace helam {

struct SourceSpan {
  size_t start = 0;
  size_t end = 0;
  int line = 0;  // 1-based; 0 means "no location"
  int col = 0;

  bool known() const { return line > 0; }
  std::string ToString() const;
};

// ---------------------------------------------------------------------------
// Data types: d ::= () | d + d | d * d

struct DataType;
using DataTypeP = std::shared_ptr<const DataType>;

struct DataType {
  enum class Kind { kUnit, kSum, kProd };
  Kind kind = Kind::kUnit;
  DataTypeP left;
  DataTypeP right;

  static DataTypeP Unit();
  static DataTypeP Sum(DataTypeP l, DataTypeP r);
  static DataTypeP Prod(DataTypeP l, DataTypeP r);
};

bool DataEqual(const DataType& a, const DataType& b);
size_t DataSize(const DataType& d);

// ---------------------------------------------------------------------------
// Located types: T ::= d@p+ | (T -> T)@p+ | (T, ..., T)

struct ChorType;
using ChorTypeP = std::shared_ptr<const ChorType>;

struct ChorType {
  enum class Kind { kData, kFun, kTuple };
  Kind kind = Kind::kData;
  DataTypeP data;               // kData
  PartySet owners;              // kData, kFun
  ChorTypeP arg;                // kFun
  ChorTypeP ret;                // kFun
  std::vector<ChorTypeP> elems;  // kTuple, size >= 1

  static ChorTypeP Data(DataTypeP d, PartySet owners);
  static ChorTypeP Fun(ChorTypeP arg, ChorTypeP ret, PartySet owners);
  static ChorTypeP Tuple(std::vector<ChorTypeP> elems);
};

bool TypeEqual(const ChorType& a, const ChorType& b);
inline bool TypeEqual(const ChorTypeP& a, const ChorTypeP& b) {
  return TypeEqual(*a, *b);
}

// Every party mentioned anywhere in the type.
void CollectTypeParties(const ChorType& t, std::set<PartyName>& out);

// ---------------------------------------------------------------------------
// Values and expressions.

struct Value;
struct Expr;
using ValueP = std::shared_ptr<const Value>;
using ExprP = std::shared_ptr<const Expr>;

struct Value {
  enum class Kind {
    kVar,
    kLambda,
    kUnit,
    kInl,
    kInr,
    kPair,
    kVec,
    kFst,
    kSnd,
    kLookup,
    kCom,
  };
  Kind kind = Kind::kUnit;
  // kVar: the variable; kLambda: the parameter; kCom: the sender.
  std::string name;
  ChorTypeP param_type;  // kLambda
  ExprP body;            // kLambda
  // Owners for kLambda/kUnit/kFst/kSnd/kLookup; recipients for kCom.
  PartySet parties;
  // kInl/kInr: one element; kPair: two; kVec: n >= 1.
  std::vector<ValueP> elems;
  int index = 0;  // kLookup, 1-based
  SourceSpan span;

  static ValueP Var(std::string x, SourceSpan span = {});
  static ValueP Lambda(std::string x, ChorTypeP t, ExprP body, PartySet owners,
                       SourceSpan span = {});
  static ValueP Unit(PartySet owners, SourceSpan span = {});
  static ValueP Inl(ValueP v, SourceSpan span = {});
  static ValueP Inr(ValueP v, SourceSpan span = {});
  static ValueP Pair(ValueP a, ValueP b, SourceSpan span = {});
  static ValueP Vec(std::vector<ValueP> elems, SourceSpan span = {});
  static ValueP Fst(PartySet owners, SourceSpan span = {});
  static ValueP Snd(PartySet owners, SourceSpan span = {});
  static ValueP Lookup(int index, PartySet owners, SourceSpan span = {});
  static ValueP Com(PartyName sender, PartySet recipients,
                    SourceSpan span = {});
};

struct Expr {
  enum class Kind { kVal, kApp, kCase };
  Kind kind = Kind::kVal;
  ValueP value;  // kVal
  ExprP fn;      // kApp
  ExprP arg;     // kApp; kCase scrutinee
  PartySet guards;  // kCase
  std::string left_var;
  ExprP left;
  std::string right_var;
  ExprP right;
  SourceSpan span;

  static ExprP Val(ValueP v);
  static ExprP App(ExprP fn, ExprP arg, SourceSpan span = {});
  static ExprP Case(PartySet guards, ExprP scrutinee, std::string lx, ExprP l,
                    std::string rx, ExprP r, SourceSpan span = {});

  bool is_value() const { return kind == Kind::kVal; }
  const ExprP& scrutinee() const { return arg; }
};

// Structural equality; spans are ignored.
bool ValueEqual(const Value& a, const Value& b);
bool ExprEqual(const Expr& a, const Expr& b);
inline bool ExprEqual(const ExprP& a, const ExprP& b) {
  return ExprEqual(*a, *b);
}

std::set<std::string> FreeVars(const Expr& e);
std::set<std::string> FreeVars(const Value& v);

// Node count, used for fuel and generator bookkeeping.
size_t ExprSize(const Expr& e);
size_t ValueSize(const Value& v);

// True for data-shaped values built only from (), Inl, Inr and Pair.
bool IsDataValue(const Value& v);

}  // namespace helam

#endif  // HELAM_AST_H_
