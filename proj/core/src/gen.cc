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

#include "helam/gen.h"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

#include "helam/interp.h"
#include "helam/mask.h"
#include "helam/print.h"

namespace helam {
namespace {

using Gamma = std::vector<std::pair<std::string, ChorTypeP>>;

PartySet OwnersOf(const ChorTypeP& t) {
  std::set<PartyName> out;
  CollectTypeParties(*t, out);
  return PartySet::Of(std::vector<PartyName>(out.begin(), out.end()));
}

bool LambdaShaped(const ChorTypeP& t, const PartySet& theta) {
  return t->owners.IsSubsetOf(theta) && MaskIsNoop(t->arg, t->owners) &&
         OwnersOf(t->ret).IsSubsetOf(t->owners);
}

// Senders s for which com[s][R] has type t.
std::vector<PartyName> ComSenders(const ChorTypeP& t, const PartySet& theta) {
  std::vector<PartyName> out;
  const ChorTypeP& a = t->arg;
  const ChorTypeP& b = t->ret;
  if (a->kind != ChorType::Kind::kData || b->kind != ChorType::Kind::kData) {
    return out;
  }
  if (!DataEqual(*a->data, *b->data) || !a->owners.IsSubsetOf(t->owners) ||
      !t->owners.IsSubsetOf(theta)) {
    return out;
  }
  for (const PartyName& s : a->owners) {
    if (b->owners.Union(PartySet::Single(s)) == t->owners) out.push_back(s);
  }
  return out;
}

}  // namespace

Generator::Generator(const GenConfig& cfg, uint64_t seed)
    : cfg_(cfg), rng_(seed) {}

bool Generator::Coin(double p) {
  return std::bernoulli_distribution(p)(rng_);
}

int Generator::Below(int n) {
  return std::uniform_int_distribution<int>(0, n - 1)(rng_);
}

std::string Generator::FreshVar() { return fmt::format("x{}", ++vars_); }

PartySet Generator::GenTheta() {
  static const char* kNames[] = {"p", "q", "r", "s"};
  int hi = std::clamp(cfg_.max_parties, 2, 4);
  int n = 2 + Below(hi - 1);
  std::vector<PartyName> names(kNames, kNames + n);
  return PartySet::Of(std::move(names));
}

PartySet Generator::Subset(const PartySet& from) {
  std::vector<PartyName> out;
  for (const PartyName& p : from) {
    if (Coin(0.5)) out.push_back(p);
  }
  if (out.empty()) out.push_back(from.members()[Below(from.size())]);
  return PartySet::Of(std::move(out));
}

PartySet Generator::SubsetContaining(const PartySet& base,
                                     const PartySet& universe) {
  std::vector<PartyName> out = base.members();
  for (const PartyName& p : universe.Minus(base)) {
    if (Coin(0.3)) out.push_back(p);
  }
  return PartySet::Of(std::move(out));
}

DataTypeP Generator::GenData(int depth) {
  if (depth <= 0 || Coin(0.4)) return DataType::Unit();
  if (Coin(0.6)) return DataType::Sum(GenData(depth - 1), GenData(depth - 1));
  return DataType::Prod(GenData(depth - 1), GenData(depth - 1));
}

ChorTypeP Generator::GenType(const PartySet& universe, int depth) {
  double roll = std::uniform_real_distribution<double>(0, 1)(rng_);
  if (depth <= 0 || roll < 0.6) {
    return ChorType::Data(GenData(cfg_.max_data_depth), Subset(universe));
  }
  if (roll < 0.85) {
    if (Coin(0.25)) {
      PartyName s = universe.members()[Below(universe.size())];
      PartySet r = Subset(universe);
      PartySet participants = r.Union(PartySet::Single(s));
      PartySet sender_side =
          SubsetContaining(PartySet::Single(s), participants);
      DataTypeP d = GenData(cfg_.max_data_depth - 1);
      return ChorType::Fun(ChorType::Data(d, sender_side), ChorType::Data(d, r),
                           participants);
    }
    PartySet p = Subset(universe);
    return ChorType::Fun(GenType(p, depth - 1), GenType(p, depth - 1), p);
  }
  int n = 1 + Below(std::max(1, cfg_.max_tuple_len));
  std::vector<ChorTypeP> elems;
  for (int i = 0; i < n; ++i) elems.push_back(GenType(universe, depth - 1));
  return ChorType::Tuple(std::move(elems));
}

// Enlarges data owner sets with parties of theta outside `keep`, so that
// masking the result to `keep` gives t back.
ChorTypeP Generator::Widen(const ChorTypeP& t, const PartySet& theta,
                           const PartySet& keep) {
  switch (t->kind) {
    case ChorType::Kind::kData: {
      std::vector<PartyName> extra = theta.Minus(keep);
      std::vector<PartyName> owners = t->owners.members();
      for (const PartyName& p : extra) {
        if (Coin(0.35)) owners.push_back(p);
      }
      return ChorType::Data(t->data, PartySet::Of(std::move(owners)));
    }
    case ChorType::Kind::kFun:
      return t;
    case ChorType::Kind::kTuple: {
      std::vector<ChorTypeP> elems;
      for (const ChorTypeP& e : t->elems) elems.push_back(Widen(e, theta, keep));
      return ChorType::Tuple(std::move(elems));
    }
  }
  return t;
}

ValueP Generator::GenValue(const PartySet& theta, const ChorTypeP& target,
                           int depth, Gamma& gamma) {
  std::vector<std::string> vars;
  for (const auto& [x, t] : gamma) {
    std::optional<ChorTypeP> m = MaskType(t, theta);
    if (m && TypeEqual(**m, *target)) vars.push_back(x);
  }
  if (!vars.empty() && Coin(0.35)) return Value::Var(vars[Below(vars.size())]);

  switch (target->kind) {
    case ChorType::Kind::kData: {
      const DataType& d = *target->data;
      const PartySet& owners = target->owners;
      switch (d.kind) {
        case DataType::Kind::kUnit:
          return Value::Unit(owners);
        case DataType::Kind::kSum:
          if (Coin(0.5)) {
            return Value::Inl(
                GenValue(theta, ChorType::Data(d.left, owners), depth, gamma));
          }
          return Value::Inr(
              GenValue(theta, ChorType::Data(d.right, owners), depth, gamma));
        case DataType::Kind::kProd: {
          std::vector<PartyName> rest = theta.Minus(owners);
          std::vector<PartyName> a = owners.members(), b = owners.members();
          for (const PartyName& p : rest) {
            int roll = Below(4);
            if (roll == 0) a.push_back(p);
            if (roll == 1) b.push_back(p);
          }
          return Value::Pair(
              GenValue(theta, ChorType::Data(d.left, PartySet::Of(a)), depth,
                       gamma),
              GenValue(theta, ChorType::Data(d.right, PartySet::Of(b)), depth,
                       gamma));
        }
      }
      break;
    }
    case ChorType::Kind::kFun: {
      const PartySet& p = target->owners;
      std::vector<std::function<ValueP()>> options;
      std::vector<PartyName> senders = ComSenders(target, theta);
      if (!senders.empty()) {
        options.push_back([&] {
          return Value::Com(senders[Below(senders.size())],
                            target->ret->owners);
        });
      }
      const ChorTypeP& a = target->arg;
      const ChorTypeP& r = target->ret;
      if (p.IsSubsetOf(theta) && a->kind == ChorType::Kind::kData &&
          a->owners == p && a->data->kind == DataType::Kind::kProd &&
          r->kind == ChorType::Kind::kData && r->owners == p) {
        if (DataEqual(*r->data, *a->data->left)) {
          options.push_back([&] { return Value::Fst(p); });
        }
        if (DataEqual(*r->data, *a->data->right)) {
          options.push_back([&] { return Value::Snd(p); });
        }
      }
      if (p.IsSubsetOf(theta) && a->kind == ChorType::Kind::kTuple &&
          MaskIsNoop(a, p)) {
        for (size_t i = 0; i < a->elems.size(); ++i) {
          if (TypeEqual(*a->elems[i], *r)) {
            options.push_back(
                [&, i] { return Value::Lookup(static_cast<int>(i) + 1, p); });
          }
        }
      }
      if (LambdaShaped(target, theta)) {
        auto lambda = [&] {
          std::string x = FreshVar();
          gamma.emplace_back(x, a);
          ExprP body = GenExpr(p, r, depth - 1, gamma);
          gamma.pop_back();
          return Value::Lambda(x, a, std::move(body), p);
        };
        options.push_back(lambda);
        options.push_back(lambda);
      }
      if (options.empty()) {
        throw GenerationExhausted(
            fmt::format("no inhabitant of {}", PrintType(*target)));
      }
      return options[Below(options.size())]();
    }
    case ChorType::Kind::kTuple: {
      std::vector<ValueP> elems;
      for (const ChorTypeP& e : target->elems) {
        elems.push_back(GenValue(theta, e, depth, gamma));
      }
      return Value::Vec(std::move(elems));
    }
  }
  throw std::logic_error("generator: unknown type form");
}

ExprP Generator::GenExpr(const PartySet& theta, const ChorTypeP& target,
                         int depth, Gamma& gamma) {
  ++nodes_;
  if (depth <= 1 || nodes_ > cfg_.node_budget) {
    return Expr::Val(GenValue(theta, target, depth, gamma));
  }
  const GenWeights& w = cfg_.weights;
  PartySet owners = OwnersOf(target);
  bool data = target->kind == ChorType::Kind::kData;

  double value = depth == cfg_.max_depth ? w.value / 4 : w.value;
  std::vector<double> weights = {
      value, w.app_fn, data ? w.com : 0, w.proj, w.case_};
  int choice = std::discrete_distribution<int>(weights.begin(), weights.end())(rng_);
  switch (choice) {
    case 1: {
      PartySet p = SubsetContaining(owners, theta);
      ChorTypeP a = GenType(p, 1);
      ExprP fn = GenExpr(theta, ChorType::Fun(a, target, p), depth - 1, gamma);
      ExprP arg = GenExpr(theta, Widen(a, theta, p), depth - 1, gamma);
      return Expr::App(std::move(fn), std::move(arg));
    }
    case 2: {
      PartyName s = theta.members()[Below(theta.size())];
      PartySet sender_side = SubsetContaining(PartySet::Single(s), theta);
      ExprP arg = GenExpr(theta, ChorType::Data(target->data, sender_side),
                          depth - 1, gamma);
      return Expr::App(Expr::Val(Value::Com(s, target->owners)), std::move(arg));
    }
    case 3: {
      if (data && target->owners.IsSubsetOf(theta) && Coin(0.5)) {
        const PartySet& p = target->owners;
        PartySet q = SubsetContaining(p, theta);
        DataTypeP other = GenData(1);
        bool first = Coin(0.5);
        DataTypeP prod = first ? DataType::Prod(target->data, other)
                               : DataType::Prod(other, target->data);
        ExprP arg = GenExpr(theta, ChorType::Data(prod, q), depth - 1, gamma);
        ValueP fn = first ? Value::Fst(p) : Value::Snd(p);
        return Expr::App(Expr::Val(fn), std::move(arg));
      }
      PartySet p = SubsetContaining(owners, theta);
      int n = 1 + Below(std::max(1, cfg_.max_tuple_len));
      int i = Below(n);
      std::vector<ChorTypeP> elems;
      for (int k = 0; k < n; ++k) {
        elems.push_back(k == i ? target : GenType(p, 1));
      }
      ChorTypeP tuple = ChorType::Tuple(std::move(elems));
      ExprP arg = GenExpr(theta, Widen(tuple, theta, p), depth - 1, gamma);
      return Expr::App(Expr::Val(Value::Lookup(i + 1, p)), std::move(arg));
    }
    case 4: {
      PartySet g = SubsetContaining(owners, theta);
      DataTypeP dl = GenData(1), dr = GenData(1);
      PartySet q = SubsetContaining(g, theta);
      ExprP scrut = GenExpr(theta, ChorType::Data(DataType::Sum(dl, dr), q),
                            depth - 1, gamma);
      std::string xl = FreshVar(), xr = FreshVar();
      gamma.emplace_back(xl, ChorType::Data(dl, g));
      ExprP l = GenExpr(g, target, depth - 1, gamma);
      gamma.pop_back();
      gamma.emplace_back(xr, ChorType::Data(dr, g));
      ExprP r = GenExpr(g, target, depth - 1, gamma);
      gamma.pop_back();
      return Expr::Case(g, std::move(scrut), xl, std::move(l), xr, std::move(r));
    }
    default:
      return Expr::Val(GenValue(theta, target, depth, gamma));
  }
}

GenInstance Generator::Instance() {
  vars_ = 0;
  nodes_ = 0;
  GenInstance out;
  out.theta = GenTheta();
  out.type = GenType(out.theta, 3);
  Gamma gamma;
  out.expr = GenExpr(out.theta, out.type, cfg_.max_depth, gamma);
  return out;
}

GenInstance GenWellTyped(const GenConfig& cfg, uint64_t seed) {
  Generator g(cfg, seed);
  GenInstance out = g.Instance();
  out.seed = seed;
  return out;
}

ExprP GenWellTyped(const GenConfig& cfg, const PartySet& theta,
                   const ChorTypeP& target, uint64_t seed) {
  std::set<PartyName> owners;
  CollectTypeParties(*target, owners);
  for (const PartyName& p : owners) {
    if (!theta.Contains(p)) {
      throw GenerationExhausted(fmt::format("{} is not in {}", p,
                                            theta.ToString()));
    }
  }
  Generator g(cfg, seed);
  std::vector<std::pair<std::string, ChorTypeP>> gamma;
  return g.GenExpr(theta, target, cfg.max_depth, gamma);
}

std::optional<ValueP> CanonicalValue(const ChorTypeP& t, const PartySet& theta) {
  switch (t->kind) {
    case ChorType::Kind::kData: {
      std::function<ValueP(const DataType&)> data = [&](const DataType& d) {
        switch (d.kind) {
          case DataType::Kind::kSum:
            return Value::Inl(data(*d.left));
          case DataType::Kind::kProd:
            return Value::Pair(data(*d.left), data(*d.right));
          default:
            return Value::Unit(t->owners);
        }
      };
      return data(*t->data);
    }
    case ChorType::Kind::kFun: {
      if (!LambdaShaped(t, theta)) return std::nullopt;
      std::optional<ValueP> body = CanonicalValue(t->ret, t->owners);
      if (!body) return std::nullopt;
      return Value::Lambda("_", t->arg, Expr::Val(*body), t->owners);
    }
    case ChorType::Kind::kTuple: {
      std::vector<ValueP> elems;
      for (const ChorTypeP& e : t->elems) {
        std::optional<ValueP> v = CanonicalValue(e, theta);
        if (!v) return std::nullopt;
        elems.push_back(*v);
      }
      return Value::Vec(std::move(elems));
    }
  }
  return std::nullopt;
}

namespace {

struct Site {
  std::vector<int> path;
  ExprP sub;
  PartySet theta;
};

// Sites are expressions plus the components of constructor values. A path
// step selects the lambda body (0) or the element of a value, and the
// function (0) / argument (1) or scrutinee (0) / branches (1, 2) of an
// expression.
void CollectValueSites(const ValueP& v, std::vector<int>& path,
                       const PartySet& theta, std::vector<Site>& out);

void CollectSites(const ExprP& e, std::vector<int>& path, const PartySet& theta,
                  std::vector<Site>& out) {
  out.push_back(Site{path, e, theta});
  switch (e->kind) {
    case Expr::Kind::kVal:
      if (e->value->kind == Value::Kind::kLambda) {
        path.push_back(0);
        CollectSites(e->value->body, path, e->value->parties, out);
        path.pop_back();
      } else {
        CollectValueSites(e->value, path, theta, out);
      }
      return;
    case Expr::Kind::kApp:
      path.push_back(0);
      CollectSites(e->fn, path, theta, out);
      path.back() = 1;
      CollectSites(e->arg, path, theta, out);
      path.pop_back();
      return;
    case Expr::Kind::kCase:
      path.push_back(0);
      CollectSites(e->arg, path, theta, out);
      path.back() = 1;
      CollectSites(e->left, path, e->guards, out);
      path.back() = 2;
      CollectSites(e->right, path, e->guards, out);
      path.pop_back();
      return;
  }
}

void CollectValueSites(const ValueP& v, std::vector<int>& path,
                       const PartySet& theta, std::vector<Site>& out) {
  for (size_t i = 0; i < v->elems.size(); ++i) {
    path.push_back(static_cast<int>(i));
    CollectSites(Expr::Val(v->elems[i]), path, theta, out);
    path.pop_back();
  }
}

// Null when the replacement cannot stand at the path.
ExprP ReplaceAt(const ExprP& e, const std::vector<int>& path, size_t i,
                const ExprP& r) {
  if (i == path.size()) return r;
  int k = path[i];
  switch (e->kind) {
    case Expr::Kind::kVal: {
      const Value& v = *e->value;
      if (v.kind == Value::Kind::kLambda) {
        ExprP body = ReplaceAt(v.body, path, i + 1, r);
        if (!body) return nullptr;
        return Expr::Val(
            Value::Lambda(v.name, v.param_type, body, v.parties, v.span));
      }
      ExprP elem = ReplaceAt(Expr::Val(v.elems[k]), path, i + 1, r);
      if (!elem || !elem->is_value()) return nullptr;
      std::vector<ValueP> elems = v.elems;
      elems[k] = elem->value;
      switch (v.kind) {
        case Value::Kind::kInl:
          return Expr::Val(Value::Inl(elems[0], v.span));
        case Value::Kind::kInr:
          return Expr::Val(Value::Inr(elems[0], v.span));
        case Value::Kind::kPair:
          return Expr::Val(Value::Pair(elems[0], elems[1], v.span));
        default:
          return Expr::Val(Value::Vec(std::move(elems), v.span));
      }
    }
    case Expr::Kind::kApp: {
      ExprP f = e->fn, a = e->arg;
      (k == 0 ? f : a) = ReplaceAt(k == 0 ? f : a, path, i + 1, r);
      if (!f || !a) return nullptr;
      return Expr::App(f, a, e->span);
    }
    case Expr::Kind::kCase: {
      ExprP s = e->arg, l = e->left, rr = e->right;
      ExprP& slot = k == 0 ? s : k == 1 ? l : rr;
      slot = ReplaceAt(slot, path, i + 1, r);
      if (!slot) return nullptr;
      return Expr::Case(e->guards, s, e->left_var, l, e->right_var, rr, e->span);
    }
  }
  return nullptr;
}

void Descendants(const Value& v, std::vector<ExprP>& out);

size_t VarCount(const Expr& e);

size_t VarCount(const Value& v) {
  size_t n = v.kind == Value::Kind::kVar ? 1 : 0;
  if (v.body) n += VarCount(*v.body);
  for (const ValueP& w : v.elems) n += VarCount(*w);
  return n;
}

size_t VarCount(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::kVal:
      return VarCount(*e.value);
    case Expr::Kind::kApp:
      return VarCount(*e.fn) + VarCount(*e.arg);
    case Expr::Kind::kCase:
      return VarCount(*e.arg) + VarCount(*e.left) + VarCount(*e.right);
  }
  return 0;
}

// Size first, then variable occurrences, so a variable may give way to an
// equally small closed value.
std::pair<size_t, size_t> Measure(const ExprP& e) {
  return {ExprSize(*e), VarCount(*e)};
}

void Descendants(const ExprP& e, std::vector<ExprP>& out) {
  out.push_back(e);
  switch (e->kind) {
    case Expr::Kind::kVal:
      Descendants(*e->value, out);
      break;
    case Expr::Kind::kApp:
      Descendants(e->fn, out);
      Descendants(e->arg, out);
      break;
    case Expr::Kind::kCase:
      Descendants(e->arg, out);
      Descendants(e->left, out);
      Descendants(e->right, out);
      break;
  }
}

void Descendants(const Value& v, std::vector<ExprP>& out) {
  if (v.body) Descendants(v.body, out);
  for (const ValueP& w : v.elems) Descendants(*w, out);
}

std::vector<ExprP> Candidates(const Site& site, const SubtermTypes& types) {
  std::vector<ExprP> out;
  const ExprP& sub = site.sub;
  ChorTypeP t;
  if (auto it = types.exprs.find(sub.get()); it != types.exprs.end()) {
    t = it->second;
  } else if (sub->is_value()) {
    if (auto v = types.values.find(sub->value.get()); v != types.values.end()) {
      t = v->second;
    }
  }
  if (t) {
    if (std::optional<ValueP> c = CanonicalValue(t, site.theta)) {
      out.push_back(Expr::Val(*c));
    }
  }
  switch (sub->kind) {
    case Expr::Kind::kApp: {
      out.push_back(sub->fn);
      out.push_back(sub->arg);
      // A binding whose variable is unused.
      const ExprP& f = sub->fn;
      if (f->is_value() && f->value->kind == Value::Kind::kLambda &&
          !FreeVars(*f->value->body).count(f->value->name)) {
        out.push_back(f->value->body);
      }
      if (f->is_value() && f->value->kind == Value::Kind::kLambda &&
          sub->arg->is_value()) {
        out.push_back(Subst(f->value->body, f->value->name, sub->arg->value));
      }
      break;
    }
    case Expr::Kind::kCase:
      out.push_back(sub->arg);
      if (sub->arg->is_value()) {
        const ValueP& v = sub->arg->value;
        if (v->kind == Value::Kind::kInl) {
          out.push_back(Subst(sub->left, sub->left_var, v->elems[0]));
        } else if (v->kind == Value::Kind::kInr) {
          out.push_back(Subst(sub->right, sub->right_var, v->elems[0]));
        }
      }
      if (!FreeVars(*sub->left).count(sub->left_var)) out.push_back(sub->left);
      if (!FreeVars(*sub->right).count(sub->right_var)) {
        out.push_back(sub->right);
      }
      break;
    case Expr::Kind::kVal:
      for (const ValueP& v : sub->value->elems) out.push_back(Expr::Val(v));
      break;
  }
  // Deeper subterms, for when the type is preserved further down.
  std::vector<ExprP> inner;
  Descendants(sub, inner);
  for (size_t i = 1; i < inner.size(); ++i) out.push_back(inner[i]);
  return out;
}

}  // namespace

ExprP Shrink(const ExprP& e, const PartySet& theta, const ChorTypeP& type,
             const std::function<bool(const ExprP&)>& failing) {
  ExprP cur = e;
  bool improved = true;
  while (improved) {
    improved = false;
    SubtermTypes types;
    TypecheckAgainst(TypeEnv{{}, theta}, cur, type, nullptr, &types);
    std::vector<Site> sites;
    std::vector<int> path;
    CollectSites(cur, path, theta, sites);
    std::pair<size_t, size_t> measure = Measure(cur);
    for (const Site& site : sites) {
      for (const ExprP& c : Candidates(site, types)) {
        ExprP next = ReplaceAt(cur, site.path, 0, c);
        if (!next || Measure(next) >= measure) continue;
        if (!TypecheckAgainst(TypeEnv{{}, theta}, next, type).ok()) continue;
        if (!failing(next)) continue;
        cur = next;
        improved = true;
        break;
      }
      if (improved) break;
    }
  }
  return cur;
}

}  // namespace helam
