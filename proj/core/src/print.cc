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

#include "helam/print.h"

#include <fmt/format.h>

namespace helam {
namespace {

// Syntactic position of the node being printed.
enum class Pos {
  kTop,  // case/let bodies, lambda bodies, tuple elements
  kFn,   // function position of an application
  kArg,  // argument position or constructor operand
};

void Data(const DataType& d, int prec, std::string& out) {
  switch (d.kind) {
    case DataType::Kind::kUnit:
      out += "()";
      return;
    case DataType::Kind::kSum:
      if (prec > 0) out += "(";
      Data(*d.left, 0, out);
      out += " + ";
      Data(*d.right, 1, out);
      if (prec > 0) out += ")";
      return;
    case DataType::Kind::kProd:
      if (prec > 1) out += "(";
      Data(*d.left, 1, out);
      out += " * ";
      Data(*d.right, 2, out);
      if (prec > 1) out += ")";
      return;
  }
}

void Type(const ChorType& t, std::string& out) {
  switch (t.kind) {
    case ChorType::Kind::kData:
      if (t.data->kind == DataType::Kind::kUnit) {
        out += "()";
      } else {
        out += "(";
        Data(*t.data, 0, out);
        out += ")";
      }
      out += "@";
      out += t.owners.ToString();
      return;
    case ChorType::Kind::kFun:
      out += "(";
      Type(*t.arg, out);
      out += " -> ";
      Type(*t.ret, out);
      out += ")@";
      out += t.owners.ToString();
      return;
    case ChorType::Kind::kTuple:
      out += "(";
      for (size_t i = 0; i < t.elems.size(); ++i) {
        if (i > 0) out += ", ";
        Type(*t.elems[i], out);
      }
      if (t.elems.size() == 1) out += ",";
      out += ")";
      return;
  }
}

void ExprOut(const Expr& e, Pos pos, std::string& out);

void ValueOut(const Value& v, Pos pos, std::string& out) {
  switch (v.kind) {
    case Value::Kind::kVar:
      out += v.name;
      return;
    case Value::Kind::kLambda:
      out += "(fn ";
      out += v.name;
      out += ": ";
      Type(*v.param_type, out);
      out += ". ";
      ExprOut(*v.body, Pos::kTop, out);
      out += ")@";
      out += v.parties.ToString();
      return;
    case Value::Kind::kUnit:
      out += "()@";
      out += v.parties.ToString();
      return;
    case Value::Kind::kInl:
    case Value::Kind::kInr:
    case Value::Kind::kPair: {
      bool parens = pos != Pos::kTop;
      if (parens) out += "(";
      out += v.kind == Value::Kind::kInl   ? "Inl"
             : v.kind == Value::Kind::kInr ? "Inr"
                                           : "Pair";
      for (const ValueP& c : v.elems) {
        out += " ";
        ValueOut(*c, Pos::kArg, out);
      }
      if (parens) out += ")";
      return;
    }
    case Value::Kind::kVec:
      out += "(";
      for (size_t i = 0; i < v.elems.size(); ++i) {
        if (i > 0) out += ", ";
        ValueOut(*v.elems[i], Pos::kTop, out);
      }
      if (v.elems.size() == 1) out += ",";
      out += ")";
      return;
    case Value::Kind::kFst:
      out += "fst";
      out += v.parties.ToString();
      return;
    case Value::Kind::kSnd:
      out += "snd";
      out += v.parties.ToString();
      return;
    case Value::Kind::kLookup:
      out += fmt::format("lookup[{}]", v.index);
      out += v.parties.ToString();
      return;
    case Value::Kind::kCom:
      out += fmt::format("com[{}]", v.name);
      out += v.parties.ToString();
      return;
  }
}

void ExprOut(const Expr& e, Pos pos, std::string& out) {
  switch (e.kind) {
    case Expr::Kind::kVal:
      ValueOut(*e.value, pos, out);
      return;
    case Expr::Kind::kApp: {
      bool parens = pos == Pos::kArg;
      if (parens) out += "(";
      ExprOut(*e.fn, Pos::kFn, out);
      out += " ";
      ExprOut(*e.arg, Pos::kArg, out);
      if (parens) out += ")";
      return;
    }
    case Expr::Kind::kCase: {
      bool parens = pos != Pos::kTop;
      if (parens) out += "(";
      out += "case";
      out += e.guards.ToString();
      out += " ";
      ExprOut(*e.arg, Pos::kFn, out);
      out += " of Inl ";
      out += e.left_var;
      out += " => ";
      // A case in the left branch is parenthesized.
      ExprOut(*e.left, e.left->kind == Expr::Kind::kCase ? Pos::kArg : Pos::kTop,
              out);
      out += "; Inr ";
      out += e.right_var;
      out += " => ";
      ExprOut(*e.right, Pos::kTop, out);
      if (parens) out += ")";
      return;
    }
  }
}

void BehaviorOut(const Behavior& b, Pos pos, std::string& out);

void LocalOut(const LocalValue& v, Pos pos, std::string& out) {
  switch (v.kind) {
    case LocalValue::Kind::kVar:
      out += v.name;
      return;
    case LocalValue::Kind::kUnit:
      out += "()";
      return;
    case LocalValue::Kind::kBottom:
      out += "bot";
      return;
    case LocalValue::Kind::kLambda:
      out += "(fn ";
      out += v.name;
      out += ". ";
      BehaviorOut(*v.body, Pos::kTop, out);
      out += ")";
      return;
    case LocalValue::Kind::kInl:
    case LocalValue::Kind::kInr:
    case LocalValue::Kind::kPair: {
      bool parens = pos != Pos::kTop;
      if (parens) out += "(";
      out += v.kind == LocalValue::Kind::kInl   ? "Inl"
             : v.kind == LocalValue::Kind::kInr ? "Inr"
                                                : "Pair";
      for (const LocalValueP& c : v.elems) {
        out += " ";
        LocalOut(*c, Pos::kArg, out);
      }
      if (parens) out += ")";
      return;
    }
    case LocalValue::Kind::kVec:
      out += "(";
      for (size_t i = 0; i < v.elems.size(); ++i) {
        if (i > 0) out += ", ";
        LocalOut(*v.elems[i], Pos::kTop, out);
      }
      if (v.elems.size() == 1) out += ",";
      out += ")";
      return;
    case LocalValue::Kind::kFst:
      out += "fst";
      return;
    case LocalValue::Kind::kSnd:
      out += "snd";
      return;
    case LocalValue::Kind::kLookup:
      out += fmt::format("lookup[{}]", v.index);
      return;
    case LocalValue::Kind::kRecv:
      out += fmt::format("recv[{}]", v.peers.front());
      return;
    case LocalValue::Kind::kSend:
      out += "send";
      out += FormatPartyList(v.peers);
      return;
    case LocalValue::Kind::kSendSelf:
      out += "send*";
      out += FormatPartyList(v.peers);
      return;
  }
}

void BehaviorOut(const Behavior& b, Pos pos, std::string& out) {
  switch (b.kind) {
    case Behavior::Kind::kVal:
      LocalOut(*b.value, pos, out);
      return;
    case Behavior::Kind::kApp: {
      bool parens = pos == Pos::kArg;
      if (parens) out += "(";
      BehaviorOut(*b.fn, Pos::kFn, out);
      out += " ";
      BehaviorOut(*b.arg, Pos::kArg, out);
      if (parens) out += ")";
      return;
    }
    case Behavior::Kind::kCase: {
      bool parens = pos != Pos::kTop;
      if (parens) out += "(";
      out += "case ";
      BehaviorOut(*b.arg, Pos::kFn, out);
      out += " of Inl ";
      out += b.left_var;
      out += " => ";
      BehaviorOut(*b.left,
                  b.left->kind == Behavior::Kind::kCase ? Pos::kArg : Pos::kTop,
                  out);
      out += "; Inr ";
      out += b.right_var;
      out += " => ";
      BehaviorOut(*b.right, Pos::kTop, out);
      if (parens) out += ")";
      return;
    }
  }
}

}  // namespace

std::string PrintData(const DataType& d) {
  std::string out;
  Data(d, 0, out);
  return out;
}

std::string PrintType(const ChorType& t) {
  std::string out;
  Type(t, out);
  return out;
}

std::string PrintValue(const Value& v) {
  std::string out;
  ValueOut(v, Pos::kTop, out);
  return out;
}

std::string PrintExpr(const Expr& e) {
  std::string out;
  ExprOut(e, Pos::kTop, out);
  return out;
}

std::string PrintLocalValue(const LocalValue& v) {
  std::string out;
  LocalOut(v, Pos::kTop, out);
  return out;
}

std::string PrintBehavior(const Behavior& b) {
  std::string out;
  BehaviorOut(b, Pos::kTop, out);
  return out;
}

}  // namespace helam
