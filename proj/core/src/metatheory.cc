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

#include "helam/metatheory.h"

#include <algorithm>
#include <chrono>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <thread>
#include <unordered_set>

#include <fmt/format.h>

#include "helam/interp.h"
#include "helam/local.h"
#include "helam/mask.h"
#include "helam/print.h"

namespace helam {
namespace {

constexpr char kOutsider[] = "outsider";

uint64_t Mix(uint64_t seed, uint64_t salt) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Every central state from e to its normal form, bounded by the default fuel.
std::vector<ExprP> CentralStates(const ExprP& e) {
  std::vector<ExprP> out = {e};
  size_t fuel = DefaultFuel(*e);
  while (out.size() <= fuel) {
    StepResult r = Step(out.back());
    if (!r.stepped()) break;
    out.push_back(r.next);
  }
  return out;
}

PartySet RolesOrTheta(const Subject& s) {
  PartySet roles = Roles(s.expr);
  return roles.empty() ? s.theta : roles;
}

bool Reaches(const Network& from, const std::string& target, size_t budget,
             bool& exhausted) {
  std::deque<Network> queue = {from};
  std::unordered_set<std::string> seen = {NetworkKey(from)};
  while (!queue.empty()) {
    Network n = std::move(queue.front());
    queue.pop_front();
    if (NetworkKey(n) == target) return true;
    for (auto& [next, step] : EnumerateNetSteps(n)) {
      if (!seen.insert(NetworkKey(next)).second) continue;
      if (seen.size() > budget) {
        exhausted = true;
        return false;
      }
      queue.push_back(std::move(next));
    }
  }
  return false;
}

std::string Describe(const Network& n) {
  std::string out;
  for (const auto& [p, b] : n) {
    if (!out.empty()) out += "; ";
    out += fmt::format("{}: {}", p, PrintBehavior(*b));
  }
  return out;
}

}  // namespace

Network ProjectOnto(const ExprP& e, const PartySet& roles) {
  Network n;
  for (const PartyName& p : roles) n.emplace(p, Project(e, p));
  return n;
}

std::optional<std::string> CheckPreservation(const Subject& s) {
  TypeEnv env{{}, s.theta};
  ExprP cur = s.expr;
  size_t fuel = DefaultFuel(*cur);
  for (size_t i = 1; i <= fuel; ++i) {
    StepResult r = Step(cur);
    if (!r.stepped()) return std::nullopt;
    TypeResult t = TypecheckAgainst(env, r.next, s.type);
    if (!t.ok()) {
      return fmt::format("step {} ({}) breaks typing: {}; result {}", i,
                         r.rule, t.error->ToString(), Print(r.next));
    }
    cur = r.next;
  }
  return std::nullopt;
}

std::optional<std::string> CheckProgress(const Subject& s) {
  RunResult r = Run(s.expr);
  switch (r.status) {
    case RunResult::Status::kValue:
      return std::nullopt;
    case RunResult::Status::kStuck:
      return fmt::format("stuck after {} steps: {} at {}", r.steps, r.reason,
                         Print(r.final_expr));
    case RunResult::Status::kFuelExhausted:
      return fmt::format("no value after {} steps", r.steps);
  }
  return std::nullopt;
}

std::optional<std::string> CheckCompleteness(const Subject& s, size_t budget) {
  PartySet roles = RolesOrTheta(s);
  std::vector<ExprP> states = CentralStates(s.expr);
  for (size_t i = 0; i + 1 < states.size(); ++i) {
    Network from = ProjectOnto(states[i], roles);
    Network to = ProjectOnto(states[i + 1], roles);
    bool exhausted = false;
    if (!Reaches(from, NetworkKey(to), budget, exhausted)) {
      return fmt::format("central step {} not matched by the network{}: {} "
                         "does not reach {}",
                         i + 1, exhausted ? " (search budget spent)" : "",
                         Describe(from), Describe(to));
    }
  }
  return std::nullopt;
}

std::optional<std::string> CheckBottomStable(const Subject& s) {
  PartySet roles = RolesOrTheta(s);
  std::vector<ExprP> states = CentralStates(s.expr);
  for (size_t i = 0; i + 1 < states.size(); ++i) {
    for (const PartyName& p : roles) {
      if (!Project(states[i], p)->is_bottom()) continue;
      BehaviorP after = Project(states[i + 1], p);
      if (!after->is_bottom()) {
        return fmt::format("{} projects to bot before step {} but to {} after",
                           p, i + 1, Print(after));
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> CheckCruft(const Subject& s) {
  for (const ExprP& e : CentralStates(s.expr)) {
    BehaviorP b = Project(e, kOutsider);
    if (!b->is_bottom()) {
      return fmt::format("a party outside {} projects to {}",
                         s.theta.ToString(), Print(b));
    }
  }
  return std::nullopt;
}

std::optional<std::string> CheckFloorZero(const Subject& s) {
  PartySet roles = RolesOrTheta(s);
  for (const ExprP& e : CentralStates(s.expr)) {
    for (const PartyName& p : roles) {
      BehaviorP b = Project(e, p);
      if (!BehaviorEqual(b, Floor(b))) {
        return fmt::format("projection at {} is not floored: {}", p, Print(b));
      }
    }
  }
  return std::nullopt;
}

NetworkOutcome CheckNetwork(const Subject& s, uint64_t seed, size_t runs,
                            size_t exhaustive_max_steps,
                            size_t exhaustive_budget) {
  NetworkOutcome out;
  RunResult central = Run(s.expr);
  if (!central.ok()) {
    out.disagreement = "central run did not reach a value";
    return out;
  }
  PartySet roles = RolesOrTheta(s);
  Network start = ProjectOnto(s.expr, roles);
  Network expected = ProjectOnto(central.final_expr, roles);
  std::string expected_key = NetworkKey(expected);
  size_t longest = 0;
  for (size_t i = 0; i < runs; ++i) {
    SimOptions opts;
    opts.seed = Mix(seed, i);
    SimResult r = Simulate(start, opts);
    longest = std::max(longest, r.max_steps);
    if (r.status == SimResult::Status::kDeadlock) {
      if (!out.deadlock) {
        out.deadlock = fmt::format("run {}: {}", i, r.deadlock->ToString());
      }
      continue;
    }
    if (r.status != SimResult::Status::kDone) {
      if (!out.disagreement) {
        out.disagreement = fmt::format("run {}: out of fuel", i);
      }
      continue;
    }
    if (NetworkKey(r.final_network) != expected_key && !out.disagreement) {
      out.disagreement = fmt::format("run {} ends in {}, central value gives {}",
                                     i, Describe(r.final_network),
                                     Describe(expected));
    }
  }
  if (longest > exhaustive_max_steps) return out;
  out.exhaustive = true;
  SimOptions opts;
  opts.mode = SimOptions::Mode::kExhaustive;
  opts.state_budget = exhaustive_budget;
  SimResult r = Simulate(start, opts);
  if (r.status == SimResult::Status::kBudgetExhausted) {
    if (!out.disagreement) {
      out.disagreement = "exhaustive exploration ran out of budget";
    }
    return out;
  }
  if (r.deadlock && !out.deadlock) {
    out.deadlock = fmt::format("exhaustive: {}", r.deadlock->ToString());
  }
  for (const Network& t : r.terminals) {
    if (NetworkKey(t) != expected_key && !out.disagreement) {
      out.disagreement =
          fmt::format("exhaustive: an interleaving ends in {}, central value "
                      "gives {}",
                      Describe(t), Describe(expected));
    }
  }
  return out;
}

std::vector<Network> MutationFixtures() {
  std::vector<Network> out;
  // Each party waits on the other.
  out.push_back(Network{
      {"p", Behavior::App(Behavior::Val(LocalValue::Recv("q")),
                          Behavior::BottomB())},
      {"q", Behavior::App(Behavior::Val(LocalValue::Recv("p")),
                          Behavior::BottomB())},
  });
  // A multicast whose second recipient never receives.
  Network broken = ProjectAll(Expr::App(
      Expr::Val(Value::Com("s", PartySet::Of({"p", "q"}))),
      Expr::Val(Value::Unit(PartySet::Single("s")))));
  broken["q"] = Behavior::Val(LocalValue::Unit());
  out.push_back(std::move(broken));
  return out;
}

const PropertyReport* MetatheoryReport::Find(std::string_view name) const {
  for (const PropertyReport& r : properties) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

bool MetatheoryReport::ok() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyReport& r) { return r.ok(); });
}

namespace {

struct Outcome {
  std::string property;
  std::optional<std::string> failure;
  // Set when the failure can be shrunk against `recheck`.
  std::optional<Subject> subject;
  std::function<bool(const Subject&)> recheck;
  std::string counterexample;
};

struct InstanceResult {
  uint64_t seed = 0;
  std::vector<Outcome> outcomes;
  RuleCoverage coverage;
  bool exhaustive = false;
};

using SubjectCheck = std::function<std::optional<std::string>(const Subject&)>;

void AddSubjectOutcome(InstanceResult& out, const std::string& name,
                       const Subject& s, SubjectCheck check) {
  Outcome o;
  o.property = name;
  o.failure = check(s);
  if (o.failure) {
    o.subject = s;
    o.recheck = [check](const Subject& t) { return check(t).has_value(); };
    o.counterexample = Print(s.expr);
  }
  out.outcomes.push_back(std::move(o));
}

void AddOutcome(InstanceResult& out, const std::string& name,
                std::optional<std::string> failure, std::string example) {
  Outcome o;
  o.property = name;
  o.failure = std::move(failure);
  if (o.failure) o.counterexample = std::move(example);
  out.outcomes.push_back(std::move(o));
}

// Substitution on a generated open term: M under (x : Tx), V : Tx.
void CheckSubstitution(const MetatheoryOptions& opts, uint64_t seed,
                       InstanceResult& out) {
  Generator g(opts.gen, Mix(seed, 17));
  PartySet theta = g.GenTheta();
  ChorTypeP tx = g.GenType(theta, 2);
  ChorTypeP t = g.GenType(theta, 3);
  std::vector<std::pair<std::string, ChorTypeP>> gamma;
  ValueP v = g.GenValue(theta, tx, 1, gamma);
  gamma.emplace_back("sub", tx);
  ExprP m = g.GenExpr(theta, t, std::max(1, opts.gen.max_depth - 2), gamma);
  ExprP result = Subst(m, "sub", v);
  std::string example =
      fmt::format("{} with sub := {} under {}", Print(m), Print(v),
                  theta.ToString());

  std::optional<std::string> failure;
  TypeResult premise = TypecheckAgainst(TypeEnv{gamma, theta}, m, t);
  TypeResult vt = TypecheckAgainst(TypeEnv{{}, theta}, Expr::Val(v), tx);
  if (!premise.ok() || !vt.ok()) {
    failure = "generated premises do not check";
  } else if (TypeResult r = TypecheckAgainst(TypeEnv{{}, theta}, result, t);
             !r.ok()) {
    failure = fmt::format("substituted term fails: {}", r.error->ToString());
  }
  AddOutcome(out, "substitution", failure, example);

  std::optional<std::string> distrib;
  for (const PartyName& p : theta) {
    BehaviorP lhs = Project(result, p);
    BehaviorP rhs = Floor(
        LocalSubst(Project(m, p), "sub", FloorValue(Project(Expr::Val(v), p)->value)));
    if (!BehaviorEqual(lhs, rhs)) {
      distrib = fmt::format("at {}: {} vs {}", p, Print(lhs), Print(rhs));
      break;
    }
  }
  AddOutcome(out, "proj_substitution", distrib, example);
}

InstanceResult CheckInstance(const MetatheoryOptions& opts, uint64_t seed) {
  InstanceResult out;
  out.seed = seed;
  GenInstance inst = GenWellTyped(opts.gen, seed);
  Subject s{inst.theta, inst.type, inst.expr};
  std::string printed = Print(s.expr);

  TypeResult typed =
      TypecheckAgainst(TypeEnv{{}, s.theta}, s.expr, s.type, &out.coverage);
  AddOutcome(out, "generator_soundness",
             typed.ok() ? std::nullopt
                        : std::optional<std::string>(typed.error->ToString()),
             printed);
  if (!typed.ok()) return out;

  AddSubjectOutcome(out, "preservation", s, CheckPreservation);
  AddSubjectOutcome(out, "progress", s, CheckProgress);
  CheckSubstitution(opts, seed, out);
  size_t budget = opts.completeness_budget;
  AddSubjectOutcome(out, "epp_completeness", s, [budget](const Subject& t) {
    return CheckCompleteness(t, budget);
  });

  auto network = [&opts, seed](const Subject& t) {
    return CheckNetwork(t, seed, opts.seeded_runs, opts.exhaustive_max_steps,
                        opts.exhaustive_budget);
  };
  NetworkOutcome net = network(s);
  out.exhaustive = net.exhaustive;
  for (bool agreement : {true, false}) {
    Outcome o;
    o.property = agreement ? "epp_agreement" : "deadlock_freedom";
    o.failure = agreement ? net.disagreement : net.deadlock;
    if (o.failure) {
      o.subject = s;
      o.recheck = [network, agreement](const Subject& t) {
        NetworkOutcome n = network(t);
        return (agreement ? n.disagreement : n.deadlock).has_value();
      };
      o.counterexample = printed;
    }
    out.outcomes.push_back(std::move(o));
  }

  AddSubjectOutcome(out, "proj_cruft", s, CheckCruft);
  AddSubjectOutcome(out, "proj_bottom", s, CheckBottomStable);
  AddSubjectOutcome(out, "proj_floor_zero", s, CheckFloorZero);
  return out;
}

std::optional<std::string> Expect(bool ok, std::string_view what) {
  if (ok) return std::nullopt;
  return std::string(what);
}

InstanceResult CheckMaskPair(const MetatheoryOptions& opts, uint64_t seed) {
  InstanceResult out;
  out.seed = seed;
  Generator g(opts.gen, seed);
  PartySet theta = g.GenTheta();
  auto subset = [&g](const PartySet& from) {
    std::vector<PartyName> pick;
    for (const PartyName& p : from) {
      if (std::bernoulli_distribution(0.5)(g.rng())) pick.push_back(p);
    }
    if (pick.empty()) {
      pick.push_back(from.members()[g.rng()() % from.size()]);
    }
    return PartySet::Of(std::move(pick));
  };
  std::vector<std::pair<std::string, ChorTypeP>> gamma;
  ChorTypeP t = g.GenType(theta, 3);
  ValueP v = g.GenValue(theta, t, 1, gamma);
  PartySet sub = subset(theta);
  std::string example = fmt::format("{} : {} masked to {} under {}", Print(v),
                                    Print(t), sub.ToString(),
                                    theta.ToString());

  std::optional<ChorTypeP> mt = MaskType(t, sub);
  std::optional<ValueP> mv = MaskValue(v, sub);
  {
    std::optional<std::string> f;
    if (mt) {
      std::optional<ChorTypeP> again = MaskType(*mt, sub);
      if (!again || !TypeEqual(*again, *mt)) f = "type mask not idempotent";
    }
    if (!f && mv) {
      std::optional<ValueP> again = MaskValue(*mv, sub);
      if (!again || !ValueEqual(**again, **mv)) f = "value mask not idempotent";
    }
    AddOutcome(out, "mask_idempotence", f, example);
  }
  {
    // Maskable: a defined type mask carries the value along at theta.
    std::optional<std::string> f;
    if (mt) {
      if (!mv) {
        f = "value mask undefined";
      } else if (TypeResult r =
                     TypecheckAgainst(TypeEnv{{}, theta}, Expr::Val(*mv), *mt);
                 !r.ok()) {
        f = fmt::format("masked value fails: {}", r.error->ToString());
      }
    }
    AddOutcome(out, "mask_maskable", f, example);
  }
  {
    // Enclave: the same at the smaller participant set.
    std::optional<std::string> f;
    if (mt) {
      if (!mv) {
        f = "value mask undefined";
      } else if (TypeResult r =
                     TypecheckAgainst(TypeEnv{{}, sub}, Expr::Val(*mv), *mt);
                 !r.ok()) {
        f = fmt::format("masked value fails under {}: {}", sub.ToString(),
                        r.error->ToString());
      }
    }
    AddOutcome(out, "mask_enclave", f, example);
  }
  {
    // Masked: owners inside the mask see the same projection.
    std::optional<std::string> f;
    if (mv) {
      for (const PartyName& p : sub) {
        BehaviorP a = Project(Expr::Val(v), p);
        BehaviorP b = Project(Expr::Val(*mv), p);
        if (!BehaviorEqual(a, b)) {
          f = fmt::format("at {}: {} vs {}", p, Print(a), Print(b));
          break;
        }
      }
    }
    AddOutcome(out, "proj_masked", f, example);
  }

  // Data-typed values for the sub-mask and existence laws.
  PartySet owners = subset(theta);
  ChorTypeP dt = ChorType::Data(g.GenData(3), owners);
  ValueP dv = g.GenValue(theta, dt, 1, gamma);
  PartySet q = subset(owners);
  std::string data_example =
      fmt::format("{} : {} masked to {}", Print(dv), Print(dt), q.ToString());
  {
    std::optional<std::string> f;
    ChorTypeP want = ChorType::Data(dt->data, q);
    std::optional<ChorTypeP> a = MaskType(dt, q);
    std::optional<ValueP> b = MaskValue(dv, q);
    if (!a || !TypeEqual(*a, want)) {
      f = "type sub-mask differs";
    } else if (!b) {
      f = "value sub-mask undefined";
    } else if (TypeResult r =
                   TypecheckAgainst(TypeEnv{{}, theta}, Expr::Val(*b), want);
               !r.ok()) {
      f = fmt::format("sub-masked value fails: {}", r.error->ToString());
    }
    AddOutcome(out, "mask_submask", f, data_example);
  }
  {
    std::optional<std::string> f;
    BehaviorP first = Project(Expr::Val(dv), owners.members().front());
    if (first->is_bottom()) f = "owner projects to bot";
    for (const PartyName& p : owners) {
      if (f) break;
      BehaviorP b = Project(Expr::Val(dv), p);
      f = Expect(BehaviorEqual(b, first),
                 fmt::format("owners disagree: {} vs {}", Print(first),
                             Print(b)));
    }
    AddOutcome(out, "proj_existence", f, data_example);
  }
  return out;
}

template <typename F>
std::vector<InstanceResult> RunAll(size_t count, int threads, F f) {
  std::vector<InstanceResult> results(count);
  size_t workers = std::max<size_t>(1, std::min<size_t>(threads, count));
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (size_t i = w; i < count; i += workers) results[i] = f(i);
    });
  }
  for (std::thread& t : pool) t.join();
  return results;
}

class Collector {
 public:
  Collector(const MetatheoryOptions& opts, MetatheoryReport& report)
      : opts_(opts), report_(report) {}

  void Add(const InstanceResult& r) {
    for (const Outcome& o : r.outcomes) {
      PropertyReport& p = Get(o.property);
      ++p.instances;
      if (!o.failure) {
        ++p.passes;
        continue;
      }
      ++p.failure_count;
      if (p.failures.size() >= opts_.kept_failures) continue;
      std::string example = o.counterexample;
      if (opts_.shrink && o.subject && o.recheck) {
        const Subject& s = *o.subject;
        ExprP small = Shrink(s.expr, s.theta, s.type, [&](const ExprP& e) {
          return o.recheck(Subject{s.theta, s.type, e});
        });
        example = Print(small);
      }
      p.failures.push_back(PropertyFailure{r.seed, example, *o.failure});
    }
  }

  PropertyReport& Get(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return report_.properties[it->second];
    index_.emplace(name, report_.properties.size());
    PropertyReport fresh;
    fresh.name = name;
    report_.properties.push_back(std::move(fresh));
    return report_.properties.back();
  }

 private:
  const MetatheoryOptions& opts_;
  MetatheoryReport& report_;
  std::map<std::string, size_t> index_;
};

double Since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

MetatheoryReport CheckMetatheory(const MetatheoryOptions& opts) {
  MetatheoryReport report;
  Collector collect(opts, report);
  if (opts.run_instances) {
    auto start = std::chrono::steady_clock::now();
    std::vector<InstanceResult> results =
        RunAll(opts.instances, opts.threads,
               [&](size_t i) { return CheckInstance(opts, opts.seed + i); });
    for (const InstanceResult& r : results) {
      collect.Add(r);
      for (size_t k = 0; k < kNumTypingRules; ++k) {
        report.coverage.counts[k] += r.coverage.counts[k];
      }
      if (r.exhaustive) ++report.exhaustive_instances;
    }
    PropertyReport& cov = collect.Get("rule_coverage");
    cov.instances = kNumTypingRules;
    for (size_t k = 0; k < kNumTypingRules; ++k) {
      if (report.coverage.counts[k] > 0) {
        ++cov.passes;
        continue;
      }
      ++cov.failure_count;
      cov.failures.push_back(PropertyFailure{
          opts.seed,
          std::string(TypingRuleName(static_cast<TypingRule>(k))),
          "rule never exercised"});
    }
    PropertyReport& det = collect.Get("detector_sensitivity");
    for (const Network& n : MutationFixtures()) {
      ++det.instances;
      SimOptions sim;
      sim.mode = SimOptions::Mode::kExhaustive;
      SimResult r = Simulate(n, sim);
      if (r.status == SimResult::Status::kDeadlock) {
        ++det.passes;
      } else {
        ++det.failure_count;
        det.failures.push_back(
            PropertyFailure{0, Describe(n), "broken network did not deadlock"});
      }
    }
    report.instance_seconds = Since(start);
  }
  if (opts.run_masking) {
    auto start = std::chrono::steady_clock::now();
    MetatheoryOptions mask_opts = opts;
    mask_opts.gen.max_depth = 2;
    std::vector<InstanceResult> results =
        RunAll(opts.mask_pairs, opts.threads, [&](size_t i) {
          return CheckMaskPair(mask_opts, Mix(opts.seed, 1000000 + i));
        });
    for (const InstanceResult& r : results) collect.Add(r);
    report.masking_seconds = Since(start);
  }
  return report;
}

}  // namespace helam
