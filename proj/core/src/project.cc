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

#include "helam/project.h"

#include <stdexcept>
#include <utility>

namespace helam {
namespace {

void CollectValueRoles(const Value& v, std::set<PartyName>& out) {
  switch (v.kind) {
    case Value::Kind::kVar:
      return;
    case Value::Kind::kLambda:
      out.insert(v.parties.begin(), v.parties.end());
      CollectTypeParties(*v.param_type, out);
      CollectRoles(*v.body, out);
      return;
    case Value::Kind::kCom:
      out.insert(v.name);
      out.insert(v.parties.begin(), v.parties.end());
      return;
    case Value::Kind::kUnit:
    case Value::Kind::kFst:
    case Value::Kind::kSnd:
    case Value::Kind::kLookup:
      out.insert(v.parties.begin(), v.parties.end());
      return;
    case Value::Kind::kInl:
    case Value::Kind::kInr:
    case Value::Kind::kPair:
    case Value::Kind::kVec:
      for (const ValueP& c : v.elems) CollectValueRoles(*c, out);
      return;
  }
}

bool AllBottom(const std::vector<LocalValueP>& elems) {
  for (const LocalValueP& c : elems) {
    if (!c->is_bottom()) return false;
  }
  return true;
}

LocalValueP WithElems(const LocalValueP& w, std::vector<LocalValueP> elems) {
  auto out = std::make_shared<LocalValue>(*w);
  out->elems = std::move(elems);
  return out;
}

BehaviorP ValB(const LocalValueP& v) {
  return v->is_bottom() ? Behavior::BottomB() : Behavior::Val(v);
}

LocalValueP ProjectValue(const Value& v, const PartyName& p) {
  switch (v.kind) {
    case Value::Kind::kVar:
      return LocalValue::Var(v.name);
    case Value::Kind::kUnit:
      return v.parties.Contains(p) ? LocalValue::Unit() : LocalValue::Bottom();
    case Value::Kind::kLambda:
      if (!v.parties.Contains(p)) return LocalValue::Bottom();
      return LocalValue::Lambda(v.name, Project(v.body, p));
    case Value::Kind::kFst:
      return v.parties.Contains(p) ? LocalValue::Fst() : LocalValue::Bottom();
    case Value::Kind::kSnd:
      return v.parties.Contains(p) ? LocalValue::Snd() : LocalValue::Bottom();
    case Value::Kind::kLookup:
      return v.parties.Contains(p) ? LocalValue::Lookup(v.index)
                                   : LocalValue::Bottom();
    case Value::Kind::kCom: {
      bool sends = v.name == p;
      bool receives = v.parties.Contains(p);
      if (sends && receives) return LocalValue::SendSelf(v.parties.Without(p));
      if (sends) return LocalValue::Send(v.parties.members());
      if (receives) return LocalValue::Recv(v.name);
      return LocalValue::Bottom();
    }
    case Value::Kind::kInl:
      return FloorValue(LocalValue::Inl(ProjectValue(*v.elems[0], p)));
    case Value::Kind::kInr:
      return FloorValue(LocalValue::Inr(ProjectValue(*v.elems[0], p)));
    case Value::Kind::kPair:
      return FloorValue(LocalValue::Pair(ProjectValue(*v.elems[0], p),
                                         ProjectValue(*v.elems[1], p)));
    case Value::Kind::kVec: {
      std::vector<LocalValueP> elems;
      for (const ValueP& c : v.elems) elems.push_back(ProjectValue(*c, p));
      return FloorValue(LocalValue::Vec(std::move(elems)));
    }
  }
  return LocalValue::Bottom();
}

}  // namespace

void CollectRoles(const Expr& e, std::set<PartyName>& out) {
  switch (e.kind) {
    case Expr::Kind::kVal:
      CollectValueRoles(*e.value, out);
      return;
    case Expr::Kind::kApp:
      CollectRoles(*e.fn, out);
      CollectRoles(*e.arg, out);
      return;
    case Expr::Kind::kCase:
      out.insert(e.guards.begin(), e.guards.end());
      CollectRoles(*e.arg, out);
      CollectRoles(*e.left, out);
      CollectRoles(*e.right, out);
      return;
  }
}

PartySet Roles(const ExprP& e) {
  std::set<PartyName> out;
  CollectRoles(*e, out);
  if (out.empty()) return PartySet();
  return PartySet::Of(std::vector<PartyName>(out.begin(), out.end()));
}

LocalValueP FloorValue(const LocalValueP& v) {
  switch (v->kind) {
    case LocalValue::Kind::kLambda: {
      BehaviorP body = Floor(v->body);
      if (body == v->body) return v;
      return LocalValue::Lambda(v->name, std::move(body));
    }
    case LocalValue::Kind::kInl:
    case LocalValue::Kind::kInr:
    case LocalValue::Kind::kPair:
    case LocalValue::Kind::kVec: {
      std::vector<LocalValueP> elems;
      bool changed = false;
      for (const LocalValueP& c : v->elems) {
        elems.push_back(FloorValue(c));
        changed |= elems.back() != c;
      }
      if (AllBottom(elems)) return LocalValue::Bottom();
      return changed ? WithElems(v, std::move(elems)) : v;
    }
    default:
      return v;
  }
}

BehaviorP Floor(const BehaviorP& b) {
  switch (b->kind) {
    case Behavior::Kind::kVal: {
      LocalValueP v = FloorValue(b->value);
      if (v == b->value) return b;
      return ValB(v);
    }
    case Behavior::Kind::kApp: {
      BehaviorP f = Floor(b->fn);
      BehaviorP a = Floor(b->arg);
      if (f->is_bottom() && a->is_value()) return Behavior::BottomB();
      if (f == b->fn && a == b->arg) return b;
      return Behavior::App(std::move(f), std::move(a));
    }
    case Behavior::Kind::kCase: {
      BehaviorP s = Floor(b->arg);
      BehaviorP l = Floor(b->left);
      BehaviorP r = Floor(b->right);
      if (s->is_bottom() && l->is_bottom() && r->is_bottom()) {
        return Behavior::BottomB();
      }
      if (s == b->arg && l == b->left && r == b->right) return b;
      return Behavior::Case(std::move(s), b->left_var, std::move(l),
                            b->right_var, std::move(r));
    }
  }
  return b;
}

LocalValueP LocalSubstValue(const LocalValueP& w, const std::string& x,
                            const LocalValueP& v) {
  switch (w->kind) {
    case LocalValue::Kind::kVar:
      return w->name == x ? v : w;
    case LocalValue::Kind::kLambda: {
      if (w->name == x) return w;
      BehaviorP body = LocalSubst(w->body, x, v);
      if (body == w->body) return w;
      return LocalValue::Lambda(w->name, std::move(body));
    }
    case LocalValue::Kind::kInl:
    case LocalValue::Kind::kInr:
    case LocalValue::Kind::kPair:
    case LocalValue::Kind::kVec: {
      std::vector<LocalValueP> elems;
      bool changed = false;
      for (const LocalValueP& c : w->elems) {
        elems.push_back(LocalSubstValue(c, x, v));
        changed |= elems.back() != c;
      }
      return changed ? WithElems(w, std::move(elems)) : w;
    }
    default:
      return w;
  }
}

BehaviorP LocalSubst(const BehaviorP& b, const std::string& x,
                     const LocalValueP& v) {
  switch (b->kind) {
    case Behavior::Kind::kVal: {
      LocalValueP w = LocalSubstValue(b->value, x, v);
      if (w == b->value) return b;
      return ValB(w);
    }
    case Behavior::Kind::kApp: {
      BehaviorP f = LocalSubst(b->fn, x, v);
      BehaviorP a = LocalSubst(b->arg, x, v);
      if (f == b->fn && a == b->arg) return b;
      return Behavior::App(std::move(f), std::move(a));
    }
    case Behavior::Kind::kCase: {
      BehaviorP s = LocalSubst(b->arg, x, v);
      BehaviorP l = b->left_var == x ? b->left : LocalSubst(b->left, x, v);
      BehaviorP r = b->right_var == x ? b->right : LocalSubst(b->right, x, v);
      if (s == b->arg && l == b->left && r == b->right) return b;
      return Behavior::Case(std::move(s), b->left_var, std::move(l),
                            b->right_var, std::move(r));
    }
  }
  return b;
}

BehaviorP Project(const ExprP& e, const PartyName& p) {
  switch (e->kind) {
    case Expr::Kind::kVal:
      return ValB(ProjectValue(*e->value, p));
    case Expr::Kind::kApp:
      return Floor(Behavior::App(Project(e->fn, p), Project(e->arg, p)));
    case Expr::Kind::kCase: {
      BehaviorP s = Project(e->arg, p);
      if (e->guards.Contains(p)) {
        return Behavior::Case(std::move(s), e->left_var, Project(e->left, p),
                              e->right_var, Project(e->right, p));
      }
      return Floor(Behavior::Case(std::move(s), e->left_var,
                                  Behavior::BottomB(), e->right_var,
                                  Behavior::BottomB()));
    }
  }
  return Behavior::BottomB();
}

Network ProjectAll(const ExprP& e) {
  PartySet roles = Roles(e);
  if (roles.empty()) {
    throw std::invalid_argument("expression mentions no party to project to");
  }
  Network out;
  for (const PartyName& p : roles) out.emplace(p, Project(e, p));
  return out;
}

}  // namespace helam
