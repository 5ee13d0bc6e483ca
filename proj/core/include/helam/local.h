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

// Per-party process language: untyped, location-free, with send/recv and the
// "someone else's problem" value bottom.

#ifndef HELAM_LOCAL_H_
#define HELAM_LOCAL_H_

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "helam/party.h"

namespace helam {

struct LocalValue;
struct Behavior;
using LocalValueP = std::shared_ptr<const LocalValue>;
using BehaviorP = std::shared_ptr<const Behavior>;

struct LocalValue {
  enum class Kind {
    kVar,
    kUnit,
    kLambda,
    kInl,
    kInr,
    kPair,
    kFst,
    kSnd,
    kVec,
    kLookup,
    kRecv,
    kSend,
    kSendSelf,
    kBottom,
  };
  Kind kind = Kind::kBottom;
  std::string name;  // kVar; kLambda parameter
  BehaviorP body;    // kLambda
  std::vector<LocalValueP> elems;
  int index = 0;  // kLookup
  // kRecv: the single sender. kSend/kSendSelf: recipients, sorted, possibly
  // empty, never the executing party.
  std::vector<PartyName> peers;

  static LocalValueP Var(std::string x);
  static LocalValueP Unit();
  static LocalValueP Bottom();
  static LocalValueP Lambda(std::string x, BehaviorP body);
  static LocalValueP Inl(LocalValueP v);
  static LocalValueP Inr(LocalValueP v);
  static LocalValueP Pair(LocalValueP a, LocalValueP b);
  static LocalValueP Vec(std::vector<LocalValueP> elems);
  static LocalValueP Fst();
  static LocalValueP Snd();
  static LocalValueP Lookup(int index);
  static LocalValueP Recv(PartyName from);
  static LocalValueP Send(std::vector<PartyName> to);
  static LocalValueP SendSelf(std::vector<PartyName> to);

  bool is_bottom() const { return kind == Kind::kBottom; }
};

struct Behavior {
  enum class Kind { kVal, kApp, kCase };
  Kind kind = Kind::kVal;
  LocalValueP value;  // kVal
  BehaviorP fn;       // kApp
  BehaviorP arg;      // kApp; kCase scrutinee
  std::string left_var;
  BehaviorP left;
  std::string right_var;
  BehaviorP right;

  static BehaviorP Val(LocalValueP v);
  static BehaviorP App(BehaviorP fn, BehaviorP arg);
  static BehaviorP Case(BehaviorP scrutinee, std::string lx, BehaviorP l,
                        std::string rx, BehaviorP r);
  static BehaviorP BottomB();

  bool is_value() const { return kind == Kind::kVal; }
  bool is_bottom() const { return kind == Kind::kVal && value->is_bottom(); }
};

bool LocalValueEqual(const LocalValue& a, const LocalValue& b);
bool BehaviorEqual(const Behavior& a, const Behavior& b);
inline bool BehaviorEqual(const BehaviorP& a, const BehaviorP& b) {
  return BehaviorEqual(*a, *b);
}

// Wire payloads: (), Inl, Inr and Pair only.
bool IsLocalData(const LocalValue& v);

// Step annotations: (peer, value) pairs sent and received.
struct StepLabel {
  std::vector<std::pair<PartyName, LocalValueP>> sends;
  std::vector<std::pair<PartyName, LocalValueP>> receives;

  bool silent() const { return sends.empty() && receives.empty(); }
};

}  // namespace helam

#endif  // HELAM_LOCAL_H_
