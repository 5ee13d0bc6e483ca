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

#include "helam/network.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include <fmt/format.h>

#include "helam/print.h"

namespace helam {
namespace {

LocalStep Stuck(std::string reason) {
  LocalStep s;
  s.kind = LocalStep::Kind::kStuck;
  s.reason = std::move(reason);
  return s;
}

LocalStep Silent(BehaviorP next, std::string rule) {
  LocalStep s;
  s.kind = LocalStep::Kind::kSilent;
  s.next = std::move(next);
  s.rule = std::move(rule);
  return s;
}

BehaviorP ValOf(const LocalValueP& v) {
  return v->is_bottom() ? Behavior::BottomB() : Behavior::Val(v);
}

LocalStep Contract(const LocalValueP& f, const LocalValueP& a,
                   const LocalValueP& incoming) {
  switch (f->kind) {
    case LocalValue::Kind::kLambda:
      return Silent(Floor(LocalSubst(f->body, f->name, a)), "LABSAPP");
    case LocalValue::Kind::kFst:
    case LocalValue::Kind::kSnd: {
      bool first = f->kind == LocalValue::Kind::kFst;
      // A floored-away container has only bottom components.
      if (a->is_bottom()) {
        return Silent(Behavior::BottomB(), first ? "LPROJ1" : "LPROJ2");
      }
      if (a->kind != LocalValue::Kind::kPair) {
        return Stuck(fmt::format("{} applied to {}", first ? "fst" : "snd",
                                 PrintLocalValue(*a)));
      }
      return Silent(ValOf(a->elems[first ? 0 : 1]), first ? "LPROJ1" : "LPROJ2");
    }
    case LocalValue::Kind::kLookup:
      if (a->is_bottom()) return Silent(Behavior::BottomB(), "LPROJN");
      if (a->kind != LocalValue::Kind::kVec ||
          static_cast<size_t>(f->index) > a->elems.size()) {
        return Stuck(fmt::format("lookup[{}] applied to {}", f->index,
                                 PrintLocalValue(*a)));
      }
      return Silent(ValOf(a->elems[f->index - 1]), "LPROJN");
    case LocalValue::Kind::kSend:
    case LocalValue::Kind::kSendSelf: {
      bool self = f->kind == LocalValue::Kind::kSendSelf;
      if (!IsLocalData(*a)) {
        return Stuck(fmt::format("only data can be sent, not {}",
                                 PrintLocalValue(*a)));
      }
      LocalStep s;
      s.kind = f->peers.empty() ? LocalStep::Kind::kSilent
                                : LocalStep::Kind::kSend;
      s.next = self ? Behavior::Val(a) : Behavior::BottomB();
      s.rule = self ? "LSENDSELF" : "LSEND";
      s.to = f->peers;
      s.payload = a;
      return s;
    }
    case LocalValue::Kind::kRecv: {
      LocalStep s;
      s.kind = LocalStep::Kind::kRecv;
      s.rule = "LRECV";
      s.from = f->peers.front();
      if (incoming != nullptr) {
        s.payload = incoming;
        s.next = Behavior::Val(incoming);
      }
      return s;
    }
    default:
      return Stuck(fmt::format("cannot apply {}", PrintLocalValue(*f)));
  }
}

}  // namespace

LocalStep StepLocal(const BehaviorP& b, const LocalValueP& incoming) {
  switch (b->kind) {
    case Behavior::Kind::kVal:
      return LocalStep{};
    case Behavior::Kind::kApp: {
      if (!b->fn->is_value()) {
        LocalStep s = StepLocal(b->fn, incoming);
        if (s.next) s.next = Floor(Behavior::App(s.next, b->arg));
        return s;
      }
      if (!b->arg->is_value()) {
        LocalStep s = StepLocal(b->arg, incoming);
        if (s.next) s.next = Floor(Behavior::App(b->fn, s.next));
        return s;
      }
      return Contract(b->fn->value, b->arg->value, incoming);
    }
    case Behavior::Kind::kCase: {
      if (!b->arg->is_value()) {
        LocalStep s = StepLocal(b->arg, incoming);
        if (s.next) {
          s.next = Floor(Behavior::Case(s.next, b->left_var, b->left,
                                        b->right_var, b->right));
        }
        return s;
      }
      const LocalValueP& v = b->arg->value;
      if (v->kind == LocalValue::Kind::kInl) {
        return Silent(Floor(LocalSubst(b->left, b->left_var, v->elems[0])),
                      "LCASEL");
      }
      if (v->kind == LocalValue::Kind::kInr) {
        return Silent(Floor(LocalSubst(b->right, b->right_var, v->elems[0])),
                      "LCASER");
      }
      return Stuck(fmt::format("case on {}", PrintLocalValue(*v)));
    }
  }
  return Stuck("unknown behavior form");
}

StepLabel LabelOf(const LocalStep& s) {
  StepLabel label;
  if (s.kind == LocalStep::Kind::kSend) {
    for (const PartyName& q : s.to) label.sends.emplace_back(q, s.payload);
  } else if (s.kind == LocalStep::Kind::kRecv && s.payload != nullptr) {
    label.receives.emplace_back(s.from, s.payload);
  }
  return label;
}

std::vector<std::pair<Network, NetStep>> EnumerateNetSteps(const Network& n) {
  std::vector<std::pair<Network, NetStep>> out;
  for (const auto& [p, b] : n) {
    LocalStep s = StepLocal(b);
    if (s.kind == LocalStep::Kind::kSilent) {
      Network m = n;
      m[p] = s.next;
      out.emplace_back(std::move(m), NetStep{p, {}, nullptr, "NPRO"});
      continue;
    }
    if (s.kind != LocalStep::Kind::kSend) continue;
    Network m = n;
    m[p] = s.next;
    bool matched = true;
    for (const PartyName& q : s.to) {
      auto it = n.find(q);
      if (it == n.end()) {
        matched = false;
        break;
      }
      LocalStep r = StepLocal(it->second, s.payload);
      if (r.kind != LocalStep::Kind::kRecv || r.from != p) {
        matched = false;
        break;
      }
      m[q] = r.next;
    }
    if (matched) {
      out.emplace_back(std::move(m), NetStep{p, s.to, s.payload, "NCOM"});
    }
  }
  return out;
}

bool AllValues(const Network& n) {
  return std::all_of(n.begin(), n.end(),
                     [](const auto& kv) { return kv.second->is_value(); });
}

std::string NetworkKey(const Network& n) {
  std::string key;
  for (const auto& [p, b] : n) {
    key += p;
    key += '\x1f';
    key += PrintBehavior(*b);
    key += '\x1e';
  }
  return key;
}

std::string PrintNetwork(const Network& n) {
  std::string out;
  for (const auto& [p, b] : n) {
    out += fmt::format("{}: {}\n", p, PrintBehavior(*b));
  }
  return out;
}

std::string DeadlockReport::ToString() const {
  return fmt::format("deadlock: {} is stuck at {} ({})", party,
                     PrintBehavior(*behavior), reason);
}

namespace {

DeadlockReport Diagnose(const Network& n) {
  for (const auto& [p, b] : n) {
    if (b->is_value()) continue;
    LocalStep s = StepLocal(b);
    std::string reason;
    switch (s.kind) {
      case LocalStep::Kind::kSend:
        reason = fmt::format("waiting to send to {}", FormatPartyList(s.to));
        break;
      case LocalStep::Kind::kRecv:
        reason = fmt::format("waiting to receive from {}", s.from);
        break;
      case LocalStep::Kind::kStuck:
        reason = s.reason;
        break;
      default:
        reason = "no applicable rule";
        break;
    }
    return DeadlockReport{p, b, std::move(reason)};
  }
  return DeadlockReport{};
}

struct BudgetExceeded {};

class Explorer {
 public:
  Explorer(size_t budget, SimResult& out) : budget_(budget), out_(out) {}

  struct Info {
    size_t min_r = 0;
    size_t max_r = 0;
    size_t max_steps = 0;
  };

  Info Explore(const Network& n) {
    std::string key = NetworkKey(n);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (++out_.states > budget_) throw BudgetExceeded{};
    Info info;
    std::vector<std::pair<Network, NetStep>> steps = EnumerateNetSteps(n);
    if (steps.empty()) {
      if (AllValues(n)) {
        if (terminal_keys_.insert(key).second) out_.terminals.push_back(n);
      } else if (!out_.deadlock) {
        out_.deadlock = Diagnose(n);
      }
    } else {
      bool first = true;
      for (const auto& [next, step] : steps) {
        Info c = Explore(next);
        size_t r = step.rendezvous() ? 1 : 0;
        if (first || c.min_r + r < info.min_r) info.min_r = c.min_r + r;
        info.max_r = std::max(info.max_r, c.max_r + r);
        info.max_steps = std::max(info.max_steps, c.max_steps + 1);
        first = false;
      }
    }
    memo_.emplace(std::move(key), info);
    return info;
  }

 private:
  size_t budget_;
  SimResult& out_;
  std::map<std::string, Info> memo_;
  std::set<std::string> terminal_keys_;
};

}  // namespace

SimResult Simulate(const Network& n, const SimOptions& opts) {
  SimResult out;
  if (opts.mode == SimOptions::Mode::kExhaustive) {
    Explorer explorer(opts.state_budget, out);
    try {
      Explorer::Info info = explorer.Explore(n);
      out.min_rendezvous = info.min_r;
      out.max_rendezvous = info.max_r;
      out.max_steps = info.max_steps;
    } catch (const BudgetExceeded&) {
      out.status = SimResult::Status::kBudgetExhausted;
      return out;
    }
    if (out.deadlock) {
      out.status = SimResult::Status::kDeadlock;
    }
    if (!out.terminals.empty()) out.final_network = out.terminals.front();
    return out;
  }

  std::mt19937_64 rng(opts.seed);
  Network cur = n;
  while (true) {
    std::vector<std::pair<Network, NetStep>> steps = EnumerateNetSteps(cur);
    if (steps.empty()) break;
    if (out.steps.size() == opts.fuel) {
      out.status = SimResult::Status::kFuelExhausted;
      out.final_network = std::move(cur);
      return out;
    }
    std::uniform_int_distribution<size_t> pick(0, steps.size() - 1);
    auto& chosen = steps[pick(rng)];
    if (chosen.second.rendezvous()) ++out.min_rendezvous;
    out.steps.push_back(std::move(chosen.second));
    cur = std::move(chosen.first);
  }
  out.max_rendezvous = out.min_rendezvous;
  out.max_steps = out.steps.size();
  if (!AllValues(cur)) {
    out.status = SimResult::Status::kDeadlock;
    out.deadlock = Diagnose(cur);
  }
  out.final_network = std::move(cur);
  return out;
}

std::vector<std::string> RecordTrace(const std::vector<NetStep>& steps) {
  std::vector<std::string> out;
  for (size_t i = 0; i < steps.size(); ++i) {
    const NetStep& s = steps[i];
    if (!s.rendezvous()) continue;
    out.push_back(fmt::format("step {}: {} -> {} : {}", i + 1, s.origin,
                              FormatPartyList(s.recipients),
                              PrintLocalValue(*s.payload)));
  }
  return out;
}

}  // namespace helam
