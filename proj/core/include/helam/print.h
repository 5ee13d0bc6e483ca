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

// Canonical text rendering. Chor output re-parses to the same tree; local
// output uses the same conventions with `bot` for the missing value.

#ifndef HELAM_PRINT_H_
#define HELAM_PRINT_H_

#include <string>

#include "helam/ast.h"
#include "helam/local.h"

namespace helam {

std::string PrintData(const DataType& d);
std::string PrintType(const ChorType& t);
std::string PrintValue(const Value& v);
std::string PrintExpr(const Expr& e);
std::string PrintLocalValue(const LocalValue& v);
std::string PrintBehavior(const Behavior& b);

inline std::string Print(const ChorTypeP& t) { return PrintType(*t); }
inline std::string Print(const ValueP& v) { return PrintValue(*v); }
inline std::string Print(const ExprP& e) { return PrintExpr(*e); }
inline std::string Print(const LocalValueP& v) { return PrintLocalValue(*v); }
inline std::string Print(const BehaviorP& b) { return PrintBehavior(*b); }

}  // namespace helam

#endif  // HELAM_PRINT_H_
