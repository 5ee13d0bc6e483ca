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

// Labeled local stepping and the rendezvous network semantics, with seeded
// and exhaustive schedulers.

#ifndef HELAM_NETWORK_H_
#define HELAM_NETWORK_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "helam/local.h"
#include "helam/project.h"

namespace helam {

// The single pending action of a behavior under the leftmost strategy.
struct LocalStep {
  enum class Kind { kValue, kSilent, kSend, kRecv, kStuck };
  Kind kind = Kind::kValue;
  // Successor; null for kValue/kStuck and for kRecv without an incoming value.
  BehaviorP next;
  std::string rule;
  std::vector<PartyName> to;  // kSend
  LocalValueP payload;        // kSend; kRecv once matched
  PartyName from;             // kRecv
  std::string reason;         // kStuck
};

// `incoming` resolves a receive; it is ignored by every other rule.
LocalStep StepLocal(const BehaviorP& b, const LocalValueP& incoming = nullptr);

// The send/receive annotation of a resolved local step.
StepLabel LabelOf(const LocalStep& s);

struct NetStep {
  PartyName origin;
  std::vector<PartyName> recipients;  // empty for a silent step
  LocalValueP payload;                // null for a silent step
  std::string rule;                   // "NPRO" or "NCOM"

  bool rendezvous() const { return payload != nullptr; }
};

std::vector<std::pair<Network, NetStep>> EnumerateNetSteps(const Network& n);

bool AllValues(const Network& n);
std::string NetworkKey(const Network& n);
std::string PrintNetwork(const Network& n);

struct DeadlockReport {
  PartyName party;
  BehaviorP behavior;
  std::string reason;

  std::string ToString() const;
};

struct SimOptions {
  enum class Mode { kSeeded, kExhaustive };
  Mode mode = Mode::kSeeded;
  uint64_t seed = 0;
  size_t fuel = 100000;          // network steps per run
  size_t state_budget = 100000;  // exhaustive mode
};

struct SimResult {
  enum class Status { kDone, kDeadlock, kFuelExhausted, kBudgetExhausted };
  Status status = Status::kDone;
  // Seeded: the run's final network. Exhaustive: the unique final network
  // when all interleavings agree, else the first one found.
  Network final_network;
  // Seeded mode only: every step taken, in order.
  std::vector<NetStep> steps;
  std::optional<DeadlockReport> deadlock;
  // Exhaustive mode: distinct terminal networks and explored states.
  std::vector<Network> terminals;
  size_t states = 0;
  // Rendezvous count per complete run (min/max over interleavings).
  size_t min_rendezvous = 0;
  size_t max_rendezvous = 0;
  // Longest run in network steps (exhaustive) or the run length (seeded).
  size_t max_steps = 0;

  bool ok() const { return status == Status::kDone; }
};

SimResult Simulate(const Network& n, const SimOptions& opts);

// `step <n>: <origin> -> [<recipients>] : <payload>` per rendezvous; n is the
// 1-based index of the step in the run, silent steps included.
std::vector<std::string> RecordTrace(const std::vector<NetStep>& steps);

}  // namespace helam

#endif  // HELAM_NETWORK_H_
