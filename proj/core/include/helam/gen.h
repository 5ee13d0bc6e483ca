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

// Type-directed generation of well-typed choreographies and a greedy
// shrinker. Generation runs the typing rules backwards: it picks a rule whose
// conclusion can produce the requested type and then generates premises.

#ifndef HELAM_GEN_H_
#define HELAM_GEN_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "helam/ast.h"
#include "helam/typecheck.h"

namespace helam {

struct GenWeights {
  double value = 3;
  double app_fn = 2;  // (function expression) argument
  double com = 2;
  double proj = 1;    // fst / snd / lookup applications
  double case_ = 2;
  double var = 2;
};

struct GenConfig {
  int max_parties = 4;  // 2..4
  int max_depth = 6;  // expression nesting; a bare value has depth 1
  int max_tuple_len = 3;
  int max_data_depth = 3;
  // Soft cap on generated nodes; beyond it only values are produced.
  int node_budget = 60;
  uint64_t seed = 0;
  GenWeights weights;
};

// A closed expression with its participant set and checking type.
struct GenInstance {
  PartySet theta;
  ChorTypeP type;
  ExprP expr;
  uint64_t seed = 0;
};

class Generator {
 public:
  Generator(const GenConfig& cfg, uint64_t seed);

  PartySet GenTheta();
  DataTypeP GenData(int depth);
  // A type all of whose owners lie in `universe`, inhabited under it.
  ChorTypeP GenType(const PartySet& universe, int depth);

  ExprP GenExpr(const PartySet& theta, const ChorTypeP& target, int depth,
                std::vector<std::pair<std::string, ChorTypeP>>& gamma);
  ValueP GenValue(const PartySet& theta, const ChorTypeP& target, int depth,
                  std::vector<std::pair<std::string, ChorTypeP>>& gamma);

  GenInstance Instance();

  std::mt19937_64& rng() { return rng_; }
  std::string FreshVar();

 private:
  PartySet Subset(const PartySet& from);
  PartySet SubsetContaining(const PartySet& base, const PartySet& universe);
  ChorTypeP Widen(const ChorTypeP& t, const PartySet& theta,
                  const PartySet& keep);
  bool Coin(double p);
  int Below(int n);

  GenConfig cfg_;
  std::mt19937_64 rng_;
  int vars_ = 0;
  int nodes_ = 0;
};

// Raised when no inhabitant of the requested type can be built under theta.
class GenerationExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

GenInstance GenWellTyped(const GenConfig& cfg, uint64_t seed);

// A closed expression checking against `target` under `theta`. Throws
// GenerationExhausted when target mentions parties outside theta or has a
// function component with no inhabitant.
ExprP GenWellTyped(const GenConfig& cfg, const PartySet& theta,
                   const ChorTypeP& target, uint64_t seed);

// A fixed inhabitant: leftmost injections of units for data, constant
// functions for function types. nullopt when the type has no such
// inhabitant.
std::optional<ValueP> CanonicalValue(const ChorTypeP& t, const PartySet& theta);

// Greedily replaces subterms by smaller well-typed ones while `failing`
// still holds. The result always checks against `type` under `theta`.
ExprP Shrink(const ExprP& e, const PartySet& theta, const ChorTypeP& type,
             const std::function<bool(const ExprP&)>& failing);

}  // namespace helam

#endif  // HELAM_GEN_H_
