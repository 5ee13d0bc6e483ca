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

#include <stdexcept>

#include <fmt/format.h>

namespace helam {

std::string SourceSpan::ToString() const {
  if (!known()) return "?";
  return fmt::format("{}:{}", line, col);
}

DataTypeP DataType::Unit() {
  static const DataTypeP kUnit = std::make_shared<DataType>();
  return kUnit;
}

DataTypeP DataType::Sum(DataTypeP l, DataTypeP r) {
  auto d = std::make_shared<DataType>();
  d->kind = Kind::kSum;
  d->left = std::move(l);
  d->right = std::move(r);
  return d;
}

DataTypeP DataType::Prod(DataTypeP l, DataTypeP r) {
  auto d = std::make_shared<DataType>();
  d->kind = Kind::kProd;
  d->left = std::move(l);
  d->right = std::move(r);
  return d;
}

bool DataEqual(const DataType& a, const DataType& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind) return false;
  if (a.kind == DataType::Kind::kUnit) return true;
  return DataEqual(*a.left, *b.left) && DataEqual(*a.right, *b.right);
}

size_t DataSize(const DataType& d) {
  if (d.kind == DataType::Kind::kUnit) return 1;
  return 1 + DataSize(*d.left) + DataSize(*d.right);
}

ChorTypeP ChorType::Data(DataTypeP d, PartySet owners) {
  if (owners.empty()) throw std::invalid_argument("data type needs owners");
  auto t = std::make_shared<ChorType>();
  t->kind = Kind::kData;
  t->data = std::move(d);
  t->owners = std::move(owners);
  return t;
}

ChorTypeP ChorType::Fun(ChorTypeP arg, ChorTypeP ret, PartySet owners) {
  if (owners.empty()) throw std::invalid_argument("function type needs owners");
  auto t = std::make_shared<ChorType>();
  t->kind = Kind::kFun;
  t->arg = std::move(arg);
  t->ret = std::move(ret);
  t->owners = std::move(owners);
  return t;
}

ChorTypeP ChorType::Tuple(std::vector<ChorTypeP> elems) {
  if (elems.empty()) throw std::invalid_argument("tuple type needs elements");
  auto t = std::make_shared<ChorType>();
  t->kind = Kind::kTuple;
  t->elems = std::move(elems);
  return t;
}

bool TypeEqual(const ChorType& a, const ChorType& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ChorType::Kind::kData:
      return a.owners == b.owners && DataEqual(*a.data, *b.data);
    case ChorType::Kind::kFun:
      return a.owners == b.owners && TypeEqual(*a.arg, *b.arg) &&
             TypeEqual(*a.ret, *b.ret);
    case ChorType::Kind::kTuple:
      if (a.elems.size() != b.elems.size()) return false;
      for (size_t i = 0; i < a.elems.size(); ++i) {
        if (!TypeEqual(*a.elems[i], *b.elems[i])) return false;
      }
      return true;
  }
  return false;
}

void CollectTypeParties(const ChorType& t, std::set<PartyName>& out) {
  switch (t.kind) {
    case ChorType::Kind::kData:
      out.insert(t.owners.begin(), t.owners.end());
      break;
    case ChorType::Kind::kFun:
      out.insert(t.owners.begin(), t.owners.end());
      CollectTypeParties(*t.arg, out);
      CollectTypeParties(*t.ret, out);
      break;
    case ChorType::Kind::kTuple:
      for (const ChorTypeP& e : t.elems) CollectTypeParties(*e, out);
      break;
  }
}

namespace {

std::shared_ptr<Value> NewValue(Value::Kind k, SourceSpan span) {
  auto v = std::make_shared<Value>();
  v->kind = k;
  v->span = span;
  return v;
}

void RequireParties(const PartySet& p, const char* what) {
  if (p.empty()) {
    throw std::invalid_argument(fmt::format("{} needs a nonempty party set", what));
  }
}

}  // namespace

ValueP Value::Var(std::string x, SourceSpan span) {
  auto v = NewValue(Kind::kVar, span);
  v->name = std::move(x);
  return v;
}

ValueP Value::Lambda(std::string x, ChorTypeP t, ExprP body, PartySet owners,
                     SourceSpan span) {
  RequireParties(owners, "lambda");
  auto v = NewValue(Kind::kLambda, span);
  v->name = std::move(x);
  v->param_type = std::move(t);
  v->body = std::move(body);
  v->parties = std::move(owners);
  return v;
}

ValueP Value::Unit(PartySet owners, SourceSpan span) {
  RequireParties(owners, "unit");
  auto v = NewValue(Kind::kUnit, span);
  v->parties = std::move(owners);
  return v;
}

ValueP Value::Inl(ValueP inner, SourceSpan span) {
  auto v = NewValue(Kind::kInl, span);
  v->elems.push_back(std::move(inner));
  return v;
}

ValueP Value::Inr(ValueP inner, SourceSpan span) {
  auto v = NewValue(Kind::kInr, span);
  v->elems.push_back(std::move(inner));
  return v;
}

ValueP Value::Pair(ValueP a, ValueP b, SourceSpan span) {
  auto v = NewValue(Kind::kPair, span);
  v->elems.push_back(std::move(a));
  v->elems.push_back(std::move(b));
  return v;
}

ValueP Value::Vec(std::vector<ValueP> elems, SourceSpan span) {
  if (elems.empty()) throw std::invalid_argument("tuple needs elements");
  auto v = NewValue(Kind::kVec, span);
  v->elems = std::move(elems);
  return v;
}

ValueP Value::Fst(PartySet owners, SourceSpan span) {
  RequireParties(owners, "fst");
  auto v = NewValue(Kind::kFst, span);
  v->parties = std::move(owners);
  return v;
}

ValueP Value::Snd(PartySet owners, SourceSpan span) {
  RequireParties(owners, "snd");
  auto v = NewValue(Kind::kSnd, span);
  v->parties = std::move(owners);
  return v;
}

ValueP Value::Lookup(int index, PartySet owners, SourceSpan span) {
  RequireParties(owners, "lookup");
  if (index < 1) throw std::invalid_argument("lookup index is 1-based");
  auto v = NewValue(Kind::kLookup, span);
  v->index = index;
  v->parties = std::move(owners);
  return v;
}

ValueP Value::Com(PartyName sender, PartySet recipients, SourceSpan span) {
  RequireParties(recipients, "com");
  if (!IsValidPartyName(sender)) {
    throw std::invalid_argument("invalid sender '" + sender + "'");
  }
  auto v = NewValue(Kind::kCom, span);
  v->name = std::move(sender);
  v->parties = std::move(recipients);
  return v;
}

ExprP Expr::Val(ValueP v) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::kVal;
  e->span = v->span;
  e->value = std::move(v);
  return e;
}

ExprP Expr::App(ExprP fn, ExprP arg, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::kApp;
  e->fn = std::move(fn);
  e->arg = std::move(arg);
  e->span = span.known() ? span : e->fn->span;
  return e;
}

ExprP Expr::Case(PartySet guards, ExprP scrutinee, std::string lx, ExprP l,
                 std::string rx, ExprP r, SourceSpan span) {
  RequireParties(guards, "case");
  auto e = std::make_shared<Expr>();
  e->kind = Kind::kCase;
  e->guards = std::move(guards);
  e->arg = std::move(scrutinee);
  e->left_var = std::move(lx);
  e->left = std::move(l);
  e->right_var = std::move(rx);
  e->right = std::move(r);
  e->span = span;
  return e;
}

bool ValueEqual(const Value& a, const Value& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Value::Kind::kVar:
      return a.name == b.name;
    case Value::Kind::kLambda:
      return a.name == b.name && a.parties == b.parties &&
             TypeEqual(*a.param_type, *b.param_type) &&
             ExprEqual(*a.body, *b.body);
    case Value::Kind::kUnit:
    case Value::Kind::kFst:
    case Value::Kind::kSnd:
      return a.parties == b.parties;
    case Value::Kind::kLookup:
      return a.index == b.index && a.parties == b.parties;
    case Value::Kind::kCom:
      return a.name == b.name && a.parties == b.parties;
    case Value::Kind::kInl:
    case Value::Kind::kInr:
    case Value::Kind::kPair:
    case Value::Kind::kVec:
      if (a.elems.size() != b.elems.size()) return false;
      for (size_t i = 0; i < a.elems.size(); ++i) {
        if (!ValueEqual(*a.elems[i], *b.elems[i])) return false;
      }
      return true;
  }
  return false;
}

bool ExprEqual(const Expr& a, const Expr& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::kVal:
      return ValueEqual(*a.value, *b.value);
    case Expr::Kind::kApp:
      return ExprEqual(*a.fn, *b.fn) && ExprEqual(*a.arg, *b.arg);
    case Expr::Kind::kCase:
      return a.guards == b.guards && a.left_var == b.left_var &&
             a.right_var == b.right_var && ExprEqual(*a.arg, *b.arg) &&
             ExprEqual(*a.left, *b.left) && ExprEqual(*a.right, *b.right);
  }
  return false;
}

namespace {

void FreeIn(const Expr& e, std::set<std::string>& bound,
            std::set<std::string>& out);

void FreeIn(const Value& v, std::set<std::string>& bound,
            std::set<std::string>& out) {
  switch (v.kind) {
    case Value::Kind::kVar:
      if (!bound.count(v.name)) out.insert(v.name);
      return;
    case Value::Kind::kLambda: {
      bool fresh = bound.insert(v.name).second;
      FreeIn(*v.body, bound, out);
      if (fresh) bound.erase(v.name);
      return;
    }
    default:
      for (const ValueP& c : v.elems) FreeIn(*c, bound, out);
  }
}

void FreeUnder(const std::string& x, const Expr& body,
               std::set<std::string>& bound, std::set<std::string>& out) {
  bool fresh = bound.insert(x).second;
  FreeIn(body, bound, out);
  if (fresh) bound.erase(x);
}

void FreeIn(const Expr& e, std::set<std::string>& bound,
            std::set<std::string>& out) {
  switch (e.kind) {
    case Expr::Kind::kVal:
      FreeIn(*e.value, bound, out);
      return;
    case Expr::Kind::kApp:
      FreeIn(*e.fn, bound, out);
      FreeIn(*e.arg, bound, out);
      return;
    case Expr::Kind::kCase:
      FreeIn(*e.arg, bound, out);
      FreeUnder(e.left_var, *e.left, bound, out);
      FreeUnder(e.right_var, *e.right, bound, out);
      return;
  }
}

}  // namespace

std::set<std::string> FreeVars(const Expr& e) {
  std::set<std::string> bound, out;
  FreeIn(e, bound, out);
  return out;
}

std::set<std::string> FreeVars(const Value& v) {
  std::set<std::string> bound, out;
  FreeIn(v, bound, out);
  return out;
}

size_t ValueSize(const Value& v) {
  size_t n = 1;
  if (v.kind == Value::Kind::kLambda) n += ExprSize(*v.body);
  for (const ValueP& c : v.elems) n += ValueSize(*c);
  return n;
}

size_t ExprSize(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::kVal:
      return ValueSize(*e.value);
    case Expr::Kind::kApp:
      return 1 + ExprSize(*e.fn) + ExprSize(*e.arg);
    case Expr::Kind::kCase:
      return 1 + ExprSize(*e.arg) + ExprSize(*e.left) + ExprSize(*e.right);
  }
  return 1;
}

bool IsDataValue(const Value& v) {
  switch (v.kind) {
    case Value::Kind::kUnit:
      return true;
    case Value::Kind::kInl:
    case Value::Kind::kInr:
    case Value::Kind::kPair:
      for (const ValueP& c : v.elems) {
        if (!IsDataValue(*c)) return false;
      }
      return true;
    default:
      return false;
  }
}

}  // namespace helam
