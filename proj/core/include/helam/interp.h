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

// Central small-step semantics: location-aware substitution and a
// deterministic leftmost stepper (function before argument).

#ifndef HELAM_INTERP_H_
#define HELAM_INTERP_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "helam/ast.h"

namespace helam {

ExprP Subst(const ExprP& m, const std::string& x, const ValueP& v);
ValueP SubstValue(const ValueP& w, const std::string& x, const ValueP& v);

struct StepResult {
  enum class Kind { kStepped, kIsValue, kStuck };
  Kind kind = Kind::kIsValue;
  ExprP next;         // kStepped
  std::string rule;   // kStepped: name of the rule at the redex
  std::string reason; // kStuck
  ExprP redex;        // kStepped: the contracted subterm

  bool stepped() const { return kind == Kind::kStepped; }
};

StepResult Step(const ExprP& e);

// Result of moving a data value from sender s to recipients r; nullopt when
// the value is not data owned by s.
std::optional<ValueP> ComValue(const ValueP& v, const PartyName& s,
                               const PartySet& r);

struct RunResult {
  enum class Status { kValue, kFuelExhausted, kStuck };
  Status status = Status::kValue;
  ExprP final_expr;
  size_t steps = 0;
  std::string reason;
  // "<rule> <redex>" per step, when requested.
  std::vector<std::string> trace;

  bool ok() const { return status == Status::kValue; }
};

inline size_t DefaultFuel(const Expr& e) { return 10 * ExprSize(e); }

RunResult Run(const ExprP& e, size_t fuel, bool record_trace = false);
inline RunResult Run(const ExprP& e) { return Run(e, DefaultFuel(*e)); }

}  // namespace helam

#endif  // HELAM_INTERP_H_
