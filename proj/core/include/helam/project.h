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

// Endpoint projection, the bottom-normalizing floor, and party extraction.

#ifndef HELAM_PROJECT_H_
#define HELAM_PROJECT_H_

#include <map>
#include <set>
#include <string>

#include "helam/ast.h"
#include "helam/local.h"

namespace helam {

// Party name -> behavior; ordered so iteration is deterministic.
using Network = std::map<PartyName, BehaviorP>;

// Every party named anywhere in e, including inside type annotations. Empty
// for an expression with no annotations at all.
PartySet Roles(const ExprP& e);
void CollectRoles(const Expr& e, std::set<PartyName>& out);

BehaviorP Floor(const BehaviorP& b);
LocalValueP FloorValue(const LocalValueP& v);

// Plain capture-naive substitution; binders are unique after uniquify.
BehaviorP LocalSubst(const BehaviorP& b, const std::string& x,
                     const LocalValueP& v);
LocalValueP LocalSubstValue(const LocalValueP& w, const std::string& x,
                            const LocalValueP& v);

BehaviorP Project(const ExprP& e, const PartyName& p);

// Throws std::invalid_argument when e mentions no party.
Network ProjectAll(const ExprP& e);

}  // namespace helam

#endif  // HELAM_PROJECT_H_
