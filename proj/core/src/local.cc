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

#include "helam/local.h"

#include <algorithm>

namespace helam {

namespace {

std::shared_ptr<LocalValue> NewLocal(LocalValue::Kind k) {
  auto v = std::make_shared<LocalValue>();
  v->kind = k;
  return v;
}

}  // namespace

LocalValueP LocalValue::Var(std::string x) {
  auto v = NewLocal(Kind::kVar);
  v->name = std::move(x);
  return v;
}

LocalValueP LocalValue::Unit() {
  static const LocalValueP kUnit = NewLocal(Kind::kUnit);
  return kUnit;
}

LocalValueP LocalValue::Bottom() {
  static const LocalValueP kBottom = NewLocal(Kind::kBottom);
  return kBottom;
}

LocalValueP LocalValue::Lambda(std::string x, BehaviorP body) {
  auto v = NewLocal(Kind::kLambda);
  v->name = std::move(x);
  v->body = std::move(body);
  return v;
}

LocalValueP LocalValue::Inl(LocalValueP inner) {
  auto v = NewLocal(Kind::kInl);
  v->elems.push_back(std::move(inner));
  return v;
}

LocalValueP LocalValue::Inr(LocalValueP inner) {
  auto v = NewLocal(Kind::kInr);
  v->elems.push_back(std::move(inner));
  return v;
}

LocalValueP LocalValue::Pair(LocalValueP a, LocalValueP b) {
  auto v = NewLocal(Kind::kPair);
  v->elems.push_back(std::move(a));
  v->elems.push_back(std::move(b));
  return v;
}

LocalValueP LocalValue::Vec(std::vector<LocalValueP> elems) {
  auto v = NewLocal(Kind::kVec);
  v->elems = std::move(elems);
  return v;
}

LocalValueP LocalValue::Fst() {
  static const LocalValueP kFst = NewLocal(Kind::kFst);
  return kFst;
}

LocalValueP LocalValue::Snd() {
  static const LocalValueP kSnd = NewLocal(Kind::kSnd);
  return kSnd;
}

LocalValueP LocalValue::Lookup(int index) {
  auto v = NewLocal(Kind::kLookup);
  v->index = index;
  return v;
}

LocalValueP LocalValue::Recv(PartyName from) {
  auto v = NewLocal(Kind::kRecv);
  v->peers.push_back(std::move(from));
  return v;
}

LocalValueP LocalValue::Send(std::vector<PartyName> to) {
  auto v = NewLocal(Kind::kSend);
  std::sort(to.begin(), to.end());
  v->peers = std::move(to);
  return v;
}

LocalValueP LocalValue::SendSelf(std::vector<PartyName> to) {
  auto v = NewLocal(Kind::kSendSelf);
  std::sort(to.begin(), to.end());
  v->peers = std::move(to);
  return v;
}

BehaviorP Behavior::Val(LocalValueP v) {
  auto b = std::make_shared<Behavior>();
  b->kind = Kind::kVal;
  b->value = std::move(v);
  return b;
}

BehaviorP Behavior::App(BehaviorP fn, BehaviorP arg) {
  auto b = std::make_shared<Behavior>();
  b->kind = Kind::kApp;
  b->fn = std::move(fn);
  b->arg = std::move(arg);
  return b;
}

BehaviorP Behavior::Case(BehaviorP scrutinee, std::string lx, BehaviorP l,
                         std::string rx, BehaviorP r) {
  auto b = std::make_shared<Behavior>();
  b->kind = Kind::kCase;
  b->arg = std::move(scrutinee);
  b->left_var = std::move(lx);
  b->left = std::move(l);
  b->right_var = std::move(rx);
  b->right = std::move(r);
  return b;
}

BehaviorP Behavior::BottomB() {
  static const BehaviorP kBottom = Val(LocalValue::Bottom());
  return kBottom;
}

bool LocalValueEqual(const LocalValue& a, const LocalValue& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case LocalValue::Kind::kVar:
      return a.name == b.name;
    case LocalValue::Kind::kLambda:
      return a.name == b.name && BehaviorEqual(*a.body, *b.body);
    case LocalValue::Kind::kLookup:
      return a.index == b.index;
    case LocalValue::Kind::kRecv:
    case LocalValue::Kind::kSend:
    case LocalValue::Kind::kSendSelf:
      return a.peers == b.peers;
    case LocalValue::Kind::kInl:
    case LocalValue::Kind::kInr:
    case LocalValue::Kind::kPair:
    case LocalValue::Kind::kVec:
      if (a.elems.size() != b.elems.size()) return false;
      for (size_t i = 0; i < a.elems.size(); ++i) {
        if (!LocalValueEqual(*a.elems[i], *b.elems[i])) return false;
      }
      return true;
    case LocalValue::Kind::kUnit:
    case LocalValue::Kind::kFst:
    case LocalValue::Kind::kSnd:
    case LocalValue::Kind::kBottom:
      return true;
  }
  return false;
}

bool BehaviorEqual(const Behavior& a, const Behavior& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Behavior::Kind::kVal:
      return LocalValueEqual(*a.value, *b.value);
    case Behavior::Kind::kApp:
      return BehaviorEqual(*a.fn, *b.fn) && BehaviorEqual(*a.arg, *b.arg);
    case Behavior::Kind::kCase:
      return a.left_var == b.left_var && a.right_var == b.right_var &&
             BehaviorEqual(*a.arg, *b.arg) && BehaviorEqual(*a.left, *b.left) &&
             BehaviorEqual(*a.right, *b.right);
  }
  return false;
}

bool IsLocalData(const LocalValue& v) {
  switch (v.kind) {
    case LocalValue::Kind::kUnit:
      return true;
    case LocalValue::Kind::kInl:
    case LocalValue::Kind::kInr:
    case LocalValue::Kind::kPair:
      for (const LocalValueP& c : v.elems) {
        if (!IsLocalData(*c)) return false;
      }
      return true;
    default:
      return false;
  }
}

}  // namespace helam
