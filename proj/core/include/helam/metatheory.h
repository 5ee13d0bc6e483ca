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

// Property drivers for the metatheory: type soundness, projection
// correctness, deadlock freedom and the masking laws, run over generated
// instances. Failures carry the seed that reproduces them and a shrunk
// counterexample.

#ifndef HELAM_METATHEORY_H_
#define HELAM_METATHEORY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "helam/ast.h"
#include "helam/gen.h"
#include "helam/network.h"
#include "helam/project.h"
#include "helam/typecheck.h"

namespace helam {

struct PropertyFailure {
  uint64_t seed = 0;
  std::string counterexample;
  std::string message;
};

struct PropertyReport {
  std::string name;
  size_t instances = 0;
  size_t passes = 0;
  size_t failure_count = 0;
  // The first few failures, shrunk where the property allows it.
  std::vector<PropertyFailure> failures;
  bool ok() const { return failure_count == 0; }
};

struct MetatheoryOptions {
  GenConfig gen;
  size_t instances = 1000;
  uint64_t seed = 1;
  size_t seeded_runs = 100;
  // Instances whose longest seeded run has at most this many network steps
  // are also explored exhaustively.
  size_t exhaustive_max_steps = 12;
  size_t exhaustive_budget = 200000;
  // Per central step, bound on networks searched for the stepped projection.
  size_t completeness_budget = 20000;
  size_t mask_pairs = 10000;
  size_t kept_failures = 3;
  bool shrink = true;
  int threads = 1;
  bool run_instances = true;
  bool run_masking = true;
};

struct MetatheoryReport {
  std::vector<PropertyReport> properties;
  RuleCoverage coverage;
  size_t exhaustive_instances = 0;
  double instance_seconds = 0;
  double masking_seconds = 0;
  const PropertyReport* Find(std::string_view name) const;
  bool ok() const;
};

// A checked program: the expression, its participants and its type.
struct Subject {
  PartySet theta;
  ChorTypeP type;
  ExprP expr;
};

// Single-subject checks; nullopt means the property holds.
std::optional<std::string> CheckPreservation(const Subject& s);
std::optional<std::string> CheckProgress(const Subject& s);
std::optional<std::string> CheckCompleteness(const Subject& s,
                                             size_t budget = 20000);
std::optional<std::string> CheckBottomStable(const Subject& s);
std::optional<std::string> CheckCruft(const Subject& s);
std::optional<std::string> CheckFloorZero(const Subject& s);

struct NetworkOutcome {
  std::optional<std::string> disagreement;
  std::optional<std::string> deadlock;
  bool exhaustive = false;
};
NetworkOutcome CheckNetwork(const Subject& s, uint64_t seed, size_t runs,
                            size_t exhaustive_max_steps,
                            size_t exhaustive_budget);

// Projection of e onto each of `roles`.
Network ProjectOnto(const ExprP& e, const PartySet& roles);

// Hand-broken networks that must deadlock.
std::vector<Network> MutationFixtures();

MetatheoryReport CheckMetatheory(const MetatheoryOptions& opts);

}  // namespace helam

#endif  // HELAM_METATHEORY_H_
