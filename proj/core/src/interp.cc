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

#include "helam/interp.h"

#include <utility>

#include <fmt/format.h>

#include "helam/mask.h"
#include "helam/print.h"

namespace helam {
namespace {

ValueP WithElems(const ValueP& w, std::vector<ValueP> elems) {
  auto out = std::make_shared<Value>(*w);
  out->elems = std::move(elems);
  return out;
}

ExprP Rebuild(const ExprP& e, ExprP fn, ExprP arg) {
  if (fn == e->fn && arg == e->arg) return e;
  return Expr::App(std::move(fn), std::move(arg), e->span);
}

StepResult Stepped(ExprP next, std::string rule, ExprP redex) {
  StepResult r;
  r.kind = StepResult::Kind::kStepped;
  r.next = std::move(next);
  r.rule = std::move(rule);
  r.redex = std::move(redex);
  return r;
}

StepResult Stuck(std::string reason) {
  StepResult r;
  r.kind = StepResult::Kind::kStuck;
  r.reason = std::move(reason);
  return r;
}

StepResult Contract(const ExprP& e) {
  const ValueP& f = e->fn->value;
  const ValueP& a = e->arg->value;
  switch (f->kind) {
    case Value::Kind::kLambda: {
      std::optional<ValueP> m = MaskValue(a, f->parties);
      if (!m) {
        return Stuck(fmt::format("argument {} cannot be restricted to {}",
                                 PrintValue(*a), f->parties.ToString()));
      }
      return Stepped(Subst(f->body, f->name, *m), "APPABS", e);
    }
    case Value::Kind::kFst:
    case Value::Kind::kSnd: {
      bool first = f->kind == Value::Kind::kFst;
      if (a->kind != Value::Kind::kPair) {
        return Stuck(fmt::format("{} applied to non-pair {}",
                                 first ? "fst" : "snd", PrintValue(*a)));
      }
      std::optional<ValueP> m = MaskValue(a->elems[first ? 0 : 1], f->parties);
      if (!m) return Stuck("projected component cannot be restricted");
      return Stepped(Expr::Val(*m), first ? "PROJ1" : "PROJ2", e);
    }
    case Value::Kind::kLookup: {
      if (a->kind != Value::Kind::kVec ||
          static_cast<size_t>(f->index) > a->elems.size()) {
        return Stuck(fmt::format("lookup[{}] applied to {}", f->index,
                                 PrintValue(*a)));
      }
      std::optional<ValueP> m = MaskValue(a->elems[f->index - 1], f->parties);
      if (!m) return Stuck("looked-up component cannot be restricted");
      return Stepped(Expr::Val(*m), "PROJN", e);
    }
    case Value::Kind::kCom: {
      std::optional<ValueP> moved = ComValue(a, f->name, f->parties);
      if (!moved) {
        return Stuck(fmt::format("com[{}] cannot send {}", f->name,
                                 PrintValue(*a)));
      }
      std::string_view rule = a->kind == Value::Kind::kPair  ? "COMPAIR"
                              : a->kind == Value::Kind::kInl ? "COMINL"
                              : a->kind == Value::Kind::kInr ? "COMINR"
                                                             : "COM1";
      return Stepped(Expr::Val(*moved), std::string(rule), e);
    }
    default:
      return Stuck(fmt::format("cannot apply {}", PrintValue(*f)));
  }
}

}  // namespace

ValueP SubstValue(const ValueP& w, const std::string& x, const ValueP& v) {
  switch (w->kind) {
    case Value::Kind::kVar:
      return w->name == x ? v : w;
    case Value::Kind::kLambda: {
      if (w->name == x) return w;
      std::optional<ValueP> m = MaskValue(v, w->parties);
      if (!m) return w;
      ExprP body = Subst(w->body, x, *m);
      if (body == w->body) return w;
      return Value::Lambda(w->name, w->param_type, std::move(body), w->parties,
                           w->span);
    }
    case Value::Kind::kInl:
    case Value::Kind::kInr:
    case Value::Kind::kPair:
    case Value::Kind::kVec: {
      std::vector<ValueP> elems;
      bool changed = false;
      for (const ValueP& c : w->elems) {
        elems.push_back(SubstValue(c, x, v));
        changed |= elems.back() != c;
      }
      return changed ? WithElems(w, std::move(elems)) : w;
    }
    default:
      return w;
  }
}

ExprP Subst(const ExprP& m, const std::string& x, const ValueP& v) {
  switch (m->kind) {
    case Expr::Kind::kVal: {
      ValueP w = SubstValue(m->value, x, v);
      return w == m->value ? m : Expr::Val(std::move(w));
    }
    case Expr::Kind::kApp:
      return Rebuild(m, Subst(m->fn, x, v), Subst(m->arg, x, v));
    case Expr::Kind::kCase: {
      ExprP scrut = Subst(m->arg, x, v);
      std::optional<ValueP> mv = MaskValue(v, m->guards);
      ExprP l = m->left, r = m->right;
      if (mv) {
        if (m->left_var != x) l = Subst(l, x, *mv);
        if (m->right_var != x) r = Subst(r, x, *mv);
      }
      if (scrut == m->arg && l == m->left && r == m->right) return m;
      return Expr::Case(m->guards, std::move(scrut), m->left_var, std::move(l),
                        m->right_var, std::move(r), m->span);
    }
  }
  return m;
}

std::optional<ValueP> ComValue(const ValueP& v, const PartyName& s,
                               const PartySet& r) {
  switch (v->kind) {
    case Value::Kind::kUnit:
      if (!v->parties.Contains(s)) return std::nullopt;
      return Value::Unit(r, v->span);
    case Value::Kind::kInl:
    case Value::Kind::kInr:
    case Value::Kind::kPair: {
      std::vector<ValueP> elems;
      for (const ValueP& c : v->elems) {
        std::optional<ValueP> moved = ComValue(c, s, r);
        if (!moved) return std::nullopt;
        elems.push_back(*std::move(moved));
      }
      return WithElems(v, std::move(elems));
    }
    default:
      return std::nullopt;
  }
}

StepResult Step(const ExprP& e) {
  switch (e->kind) {
    case Expr::Kind::kVal:
      return StepResult{};
    case Expr::Kind::kApp: {
      if (!e->fn->is_value()) {
        StepResult r = Step(e->fn);
        if (r.stepped()) r.next = Rebuild(e, r.next, e->arg);
        return r;
      }
      if (!e->arg->is_value()) {
        StepResult r = Step(e->arg);
        if (r.stepped()) r.next = Rebuild(e, e->fn, r.next);
        return r;
      }
      return Contract(e);
    }
    case Expr::Kind::kCase: {
      if (!e->arg->is_value()) {
        StepResult r = Step(e->arg);
        if (r.stepped()) {
          r.next = Expr::Case(e->guards, r.next, e->left_var, e->left,
                              e->right_var, e->right, e->span);
        }
        return r;
      }
      const ValueP& v = e->arg->value;
      bool left = v->kind == Value::Kind::kInl;
      if (!left && v->kind != Value::Kind::kInr) {
        return Stuck(fmt::format("case on non-injection {}", PrintValue(*v)));
      }
      std::optional<ValueP> m = MaskValue(v->elems[0], e->guards);
      if (!m) return Stuck("case payload cannot be restricted to the guards");
      if (left) return Stepped(Subst(e->left, e->left_var, *m), "CASEL", e);
      return Stepped(Subst(e->right, e->right_var, *m), "CASER", e);
    }
  }
  return Stuck("unknown expression form");
}

RunResult Run(const ExprP& e, size_t fuel, bool record_trace) {
  RunResult out;
  ExprP cur = e;
  while (true) {
    if (cur->is_value()) {
      out.final_expr = cur;
      return out;
    }
    if (out.steps == fuel) {
      out.status = RunResult::Status::kFuelExhausted;
      out.final_expr = cur;
      out.reason = fmt::format("no value after {} steps", fuel);
      return out;
    }
    StepResult r = Step(cur);
    if (!r.stepped()) {
      out.status = RunResult::Status::kStuck;
      out.final_expr = cur;
      out.reason = r.reason;
      return out;
    }
    if (record_trace) {
      out.trace.push_back(fmt::format("{} {}", r.rule, PrintExpr(*r.redex)));
    }
    ++out.steps;
    cur = std::move(r.next);
  }
}

}  // namespace helam
