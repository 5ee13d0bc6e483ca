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

#include "helam/typecheck.h"

#include <memory>
#include <utility>

#include <fmt/format.h>

#include "helam/mask.h"
#include "helam/print.h"
#include "helam/project.h"

namespace helam {

std::string_view TypeErrorKindName(TypeErrorKind kind) {
  switch (kind) {
    case TypeErrorKind::kUnboundVar:
      return "UnboundVar";
    case TypeErrorKind::kMaskUndefined:
      return "MaskUndefined";
    case TypeErrorKind::kNotAFunction:
      return "NotAFunction";
    case TypeErrorKind::kArgMismatch:
      return "ArgMismatch";
    case TypeErrorKind::kGuardNotSum:
      return "GuardNotSum";
    case TypeErrorKind::kBranchMismatch:
      return "BranchMismatch";
    case TypeErrorKind::kPartiesNotSubset:
      return "PartiesNotSubset";
    case TypeErrorKind::kSenderNotOwner:
      return "SenderNotOwner";
    case TypeErrorKind::kPairComponentsDisjoint:
      return "PairComponentsDisjoint";
    case TypeErrorKind::kIndexOutOfRange:
      return "IndexOutOfRange";
    case TypeErrorKind::kNoopViolation:
      return "NoopViolation";
    case TypeErrorKind::kAmbiguousSum:
      return "AmbiguousSum";
  }
  return "Unknown";
}

std::string TypeError::ToString() const {
  return fmt::format("{} at {}: {}", TypeErrorKindName(kind), span.ToString(),
                     detail);
}

std::string_view TypingRuleName(TypingRule rule) {
  static constexpr std::string_view kNames[] = {
      "TVAR",  "TLAMBDA", "TAPP",   "TCASE",  "TUNIT",  "TPAIR", "TVEC",
      "TINL",  "TINR",    "TPROJ1", "TPROJ2", "TPROJN", "TCOM",
  };
  return kNames[static_cast<size_t>(rule)];
}

namespace {

// Checker-internal types: ChorType plus unknowns.

struct IData;
using IDataP = std::shared_ptr<const IData>;
struct IData {
  enum class K { kUnit, kSum, kProd, kMeta };
  K k = K::kUnit;
  IDataP l, r;
  int id = -1;
};

struct IOwners {
  int meta = -1;  // >= 0: unknown owner set
  PartySet set;
};

struct IType;
using ITypeP = std::shared_ptr<const IType>;
struct IType {
  enum class K { kData, kFun, kTuple, kMeta };
  K k = K::kData;
  IDataP d;
  IOwners own;
  ITypeP arg, ret;
  PartySet fown;
  std::vector<ITypeP> elems;
  int id = -1;
};

ITypeP MkData(IDataP d, IOwners own) {
  auto t = std::make_shared<IType>();
  t->k = IType::K::kData;
  t->d = std::move(d);
  t->own = std::move(own);
  return t;
}

ITypeP MkFun(ITypeP a, ITypeP r, PartySet owners) {
  auto t = std::make_shared<IType>();
  t->k = IType::K::kFun;
  t->arg = std::move(a);
  t->ret = std::move(r);
  t->fown = std::move(owners);
  return t;
}

ITypeP MkTuple(std::vector<ITypeP> elems) {
  auto t = std::make_shared<IType>();
  t->k = IType::K::kTuple;
  t->elems = std::move(elems);
  return t;
}

IDataP MkD(IData::K k, IDataP l = nullptr, IDataP r = nullptr) {
  auto d = std::make_shared<IData>();
  d->k = k;
  d->l = std::move(l);
  d->r = std::move(r);
  return d;
}

IOwners Fixed(PartySet s) { return IOwners{-1, std::move(s)}; }

struct TypeFail {
  TypeError err;
};

[[noreturn]] void Fail(TypeErrorKind kind, const SourceSpan& span,
                       std::string detail) {
  throw TypeFail{TypeError{kind, span, std::move(detail)}};
}

struct ComConstraint {
  PartyName sender;
  PartySet participants;
  SourceSpan span;
};

struct LookupConstraint {
  int index;
  ITypeP result;
  PartySet owners;
  SourceSpan span;
};

class Checker {
 public:
  explicit Checker(RuleCoverage* coverage) : coverage_(coverage) {}

  void Bind(const std::string& x, const ChorTypeP& t) {
    gamma_.emplace_back(x, FromChor(*t));
  }

  ITypeP Synth(const Expr& e, const PartySet& theta) {
    ITypeP t;
    switch (e.kind) {
      case Expr::Kind::kVal:
        t = SynthValue(*e.value, theta);
        break;
      case Expr::Kind::kApp:
        t = SynthApp(e, theta);
        break;
      case Expr::Kind::kCase:
        t = SynthCase(e, theta);
        break;
    }
    if (record_) seen_.emplace_back(&e, t);
    return t;
  }

  void Record(SubtermTypes* out) { record_ = out != nullptr; }

  // Solved types of every subexpression; open ones are left out.
  void Export(SubtermTypes& out) {
    for (const auto& [node, t] : seen_) {
      try {
        out.exprs[node] = ToChor(t, node->span);
      } catch (TypeFail&) {
        // Open in the whole term; omitted.
      }
    }
    for (const auto& [node, t] : seen_values_) {
      try {
        out.values[node] = ToChor(t, node->span);
      } catch (TypeFail&) {
      }
    }
  }

  bool Unify(const ITypeP& a0, const ITypeP& b0, const SourceSpan& span) {
    ITypeP a = ResolveT(a0);
    ITypeP b = ResolveT(b0);
    if (a == b) return true;
    if (a->k == IType::K::kMeta) {
      if (b->k == IType::K::kMeta && a->id == b->id) return true;
      if (OccursT(a->id, b)) return false;
      BindT(a->id, b);
      return true;
    }
    if (b->k == IType::K::kMeta) return Unify(b, a, span);
    if (a->k != b->k) return false;
    switch (a->k) {
      case IType::K::kData:
        return UnifyD(a->d, b->d) && UnifyO(a->own, b->own);
      case IType::K::kFun:
        return a->fown == b->fown && Unify(a->arg, b->arg, span) &&
               Unify(a->ret, b->ret, span);
      case IType::K::kTuple:
        if (a->elems.size() != b->elems.size()) return false;
        for (size_t i = 0; i < a->elems.size(); ++i) {
          if (!Unify(a->elems[i], b->elems[i], span)) return false;
        }
        return true;
      case IType::K::kMeta:
        break;
    }
    return false;
  }

  ITypeP FromChor(const ChorType& t) {
    switch (t.kind) {
      case ChorType::Kind::kData:
        return MkData(FromData(*t.data), Fixed(t.owners));
      case ChorType::Kind::kFun:
        return MkFun(FromChor(*t.arg), FromChor(*t.ret), t.owners);
      case ChorType::Kind::kTuple: {
        std::vector<ITypeP> elems;
        for (const ChorTypeP& e : t.elems) elems.push_back(FromChor(*e));
        return MkTuple(std::move(elems));
      }
    }
    return nullptr;
  }

  // Fully resolved type; unknowns left in it are reported as ambiguous
  // unless they may default.
  ChorTypeP ToChor(const ITypeP& t0, const SourceSpan& span) {
    ITypeP t = ResolveT(t0);
    switch (t->k) {
      case IType::K::kData: {
        std::optional<PartySet> owners = OwnersOf(t->own);
        if (!owners) owners = DefaultOwners(t->own.meta);
        return ChorType::Data(ToData(t->d, span), *owners);
      }
      case IType::K::kFun:
        return ChorType::Fun(ToChor(t->arg, span), ToChor(t->ret, span),
                             t->fown);
      case IType::K::kTuple: {
        std::vector<ChorTypeP> elems;
        for (const ITypeP& e : t->elems) elems.push_back(ToChor(e, span));
        return ChorType::Tuple(std::move(elems));
      }
      case IType::K::kMeta:
        break;
    }
    Fail(TypeErrorKind::kAmbiguousSum, span,
         "tuple shape of a bare lookup is not determined by its context; add "
         "a type annotation");
  }

  std::string Show(const ITypeP& t0) {
    ITypeP t = ResolveT(t0);
    switch (t->k) {
      case IType::K::kData: {
        std::string d = ShowD(t->d, 0);
        if (t->d->k != IData::K::kUnit || ResolveD(t->d)->k != IData::K::kUnit) {
          d = "(" + d + ")";
        }
        std::optional<PartySet> owners = OwnersOf(t->own);
        return d + "@" + (owners ? owners->ToString() : std::string("[?]"));
      }
      case IType::K::kFun:
        return "(" + Show(t->arg) + " -> " + Show(t->ret) + ")@" +
               t->fown.ToString();
      case IType::K::kTuple: {
        std::string out = "(";
        for (size_t i = 0; i < t->elems.size(); ++i) {
          if (i > 0) out += ", ";
          out += Show(t->elems[i]);
        }
        if (t->elems.size() == 1) out += ",";
        return out + ")";
      }
      case IType::K::kMeta:
        return fmt::format("?t{}", t->id);
    }
    return "?";
  }

 private:
  void Cover(TypingRule r) {
    if (coverage_ != nullptr) coverage_->Add(r);
  }

  // --- data unknowns ---------------------------------------------------

  IDataP NewD(bool may_default) {
    auto d = std::make_shared<IData>();
    d->k = IData::K::kMeta;
    d->id = static_cast<int>(dbind_.size());
    dbind_.push_back(nullptr);
    ddefault_.push_back(may_default);
    return IDataP(std::move(d));
  }

  IDataP ResolveD(IDataP d) const {
    while (d->k == IData::K::kMeta && dbind_[d->id] != nullptr) {
      d = dbind_[d->id];
    }
    return d;
  }

  bool OccursD(int id, const IDataP& d0) const {
    IDataP d = ResolveD(d0);
    switch (d->k) {
      case IData::K::kMeta:
        return d->id == id;
      case IData::K::kUnit:
        return false;
      default:
        return OccursD(id, d->l) || OccursD(id, d->r);
    }
  }

  bool UnifyD(const IDataP& a0, const IDataP& b0) {
    IDataP a = ResolveD(a0);
    IDataP b = ResolveD(b0);
    if (a == b) return true;
    if (a->k == IData::K::kMeta) {
      if (b->k == IData::K::kMeta) {
        if (a->id == b->id) return true;
        ddefault_[b->id] = ddefault_[b->id] && ddefault_[a->id];
        dbind_[a->id] = b;
        return true;
      }
      if (OccursD(a->id, b)) return false;
      dbind_[a->id] = b;
      return true;
    }
    if (b->k == IData::K::kMeta) return UnifyD(b, a);
    if (a->k != b->k) return false;
    if (a->k == IData::K::kUnit) return true;
    return UnifyD(a->l, b->l) && UnifyD(a->r, b->r);
  }

  IDataP FromData(const DataType& d) {
    switch (d.kind) {
      case DataType::Kind::kUnit:
        return UnitD();
      case DataType::Kind::kSum:
        return MkD(IData::K::kSum, FromData(*d.left), FromData(*d.right));
      case DataType::Kind::kProd:
        return MkD(IData::K::kProd, FromData(*d.left), FromData(*d.right));
    }
    return nullptr;
  }

  static IDataP UnitD() {
    static const IDataP kUnit = MkD(IData::K::kUnit);
    return kUnit;
  }

  DataTypeP ToData(const IDataP& d0, const SourceSpan& span) {
    IDataP d = ResolveD(d0);
    switch (d->k) {
      case IData::K::kUnit:
        return DataType::Unit();
      case IData::K::kSum:
        return DataType::Sum(ToData(d->l, span), ToData(d->r, span));
      case IData::K::kProd:
        return DataType::Prod(ToData(d->l, span), ToData(d->r, span));
      case IData::K::kMeta:
        if (ddefault_[d->id]) return DataType::Unit();
        Fail(TypeErrorKind::kAmbiguousSum, span,
             "a sum component is not determined by its context; add a type "
             "annotation");
    }
    return nullptr;
  }

  std::string ShowD(const IDataP& d0, int prec) const {
    IDataP d = ResolveD(d0);
    switch (d->k) {
      case IData::K::kUnit:
        return "()";
      case IData::K::kMeta:
        return fmt::format("?d{}", d->id);
      case IData::K::kSum: {
        std::string s = ShowD(d->l, 0) + " + " + ShowD(d->r, 1);
        return prec > 0 ? "(" + s + ")" : s;
      }
      case IData::K::kProd: {
        std::string s = ShowD(d->l, 1) + " * " + ShowD(d->r, 2);
        return prec > 1 ? "(" + s + ")" : s;
      }
    }
    return "?";
  }

  // --- owner unknowns --------------------------------------------------

  IOwners NewO(ComConstraint c) {
    int id = static_cast<int>(olink_.size());
    olink_.push_back(id);
    obind_.emplace_back();
    ocons_.push_back({std::move(c)});
    return IOwners{id, PartySet()};
  }

  int FindO(int m) const {
    while (olink_[m] != m) m = olink_[m];
    return m;
  }

  std::optional<PartySet> OwnersOf(const IOwners& o) const {
    if (o.meta < 0) return o.set;
    return obind_[FindO(o.meta)];
  }

  PartySet DefaultOwners(int meta) const {
    return PartySet::Single(ocons_[FindO(meta)].front().sender);
  }

  bool UnifyO(const IOwners& a, const IOwners& b) {
    std::optional<PartySet> sa = OwnersOf(a);
    std::optional<PartySet> sb = OwnersOf(b);
    if (sa && sb) return *sa == *sb;
    if (!sa && !sb) {
      int ra = FindO(a.meta), rb = FindO(b.meta);
      if (ra == rb) return true;
      olink_[ra] = rb;
      for (ComConstraint& c : ocons_[ra]) ocons_[rb].push_back(std::move(c));
      ocons_[ra].clear();
      return true;
    }
    int r = FindO(sa ? b.meta : a.meta);
    const PartySet& s = sa ? *sa : *sb;
    for (const ComConstraint& c : ocons_[r]) {
      if (!s.Contains(c.sender)) {
        Fail(TypeErrorKind::kSenderNotOwner, c.span,
             fmt::format("sender {} does not own the value it sends (owners {})",
                         c.sender, s.ToString()));
      }
      if (!s.IsSubsetOf(c.participants)) {
        Fail(TypeErrorKind::kPartiesNotSubset, c.span,
             fmt::format("sender-side owners {} are not all among the "
                         "participants {}",
                         s.ToString(), c.participants.ToString()));
      }
    }
    obind_[r] = s;
    return true;
  }

  // --- type unknowns ---------------------------------------------------

  ITypeP NewT() {
    auto t = std::make_shared<IType>();
    t->k = IType::K::kMeta;
    t->id = static_cast<int>(tbind_.size());
    tbind_.push_back(nullptr);
    tcons_.emplace_back();
    return t;
  }

  ITypeP ResolveT(ITypeP t) const {
    while (t->k == IType::K::kMeta && tbind_[t->id] != nullptr) {
      t = tbind_[t->id];
    }
    return t;
  }

  bool OccursT(int id, const ITypeP& t0) const {
    ITypeP t = ResolveT(t0);
    switch (t->k) {
      case IType::K::kMeta:
        return t->id == id;
      case IType::K::kData:
        return false;
      case IType::K::kFun:
        return OccursT(id, t->arg) || OccursT(id, t->ret);
      case IType::K::kTuple:
        for (const ITypeP& e : t->elems) {
          if (OccursT(id, e)) return true;
        }
        return false;
    }
    return false;
  }

  void BindT(int id, const ITypeP& t0) {
    tbind_[id] = t0;
    std::vector<LookupConstraint> cons = std::move(tcons_[id]);
    tcons_[id].clear();
    ITypeP t = ResolveT(t0);
    if (t->k == IType::K::kMeta) {
      for (LookupConstraint& c : cons) tcons_[t->id].push_back(std::move(c));
      return;
    }
    for (const LookupConstraint& c : cons) CheckLookup(c, t);
  }

  void CheckLookup(const LookupConstraint& c, const ITypeP& tuple) {
    if (tuple->k != IType::K::kTuple) {
      Fail(TypeErrorKind::kArgMismatch, c.span,
           fmt::format("lookup expects a tuple, found {}", Show(tuple)));
    }
    if (static_cast<size_t>(c.index) > tuple->elems.size()) {
      Fail(TypeErrorKind::kIndexOutOfRange, c.span,
           fmt::format("lookup[{}] on a tuple of length {}", c.index,
                       tuple->elems.size()));
    }
    if (!MaskNoop(tuple, c.owners, c.span)) {
      Fail(TypeErrorKind::kNoopViolation, c.span,
           fmt::format("tuple {} is not fully available to {}", Show(tuple),
                       c.owners.ToString()));
    }
    if (!Unify(c.result, tuple->elems[c.index - 1], c.span)) {
      Fail(TypeErrorKind::kArgMismatch, c.span,
           fmt::format("lookup result {} does not match component {}",
                       Show(c.result), Show(tuple->elems[c.index - 1])));
    }
  }

  // --- masking ---------------------------------------------------------

  // nullptr when undefined.
  ITypeP Mask(const ITypeP& t0, const PartySet& theta, const SourceSpan& span) {
    ITypeP t = ResolveT(t0);
    switch (t->k) {
      case IType::K::kData: {
        std::optional<PartySet> owners = OwnersOf(t->own);
        if (!owners) {
          Fail(TypeErrorKind::kAmbiguousSum, span,
               "owners of a communicated value are not determined");
        }
        if (owners->IsSubsetOf(theta)) return t;
        std::optional<PartySet> inter = owners->Intersect(theta);
        if (!inter) return nullptr;
        return MkData(t->d, Fixed(*std::move(inter)));
      }
      case IType::K::kFun:
        return t->fown.IsSubsetOf(theta) ? t : nullptr;
      case IType::K::kTuple: {
        std::vector<ITypeP> elems;
        for (const ITypeP& e : t->elems) {
          ITypeP m = Mask(e, theta, span);
          if (m == nullptr) return nullptr;
          elems.push_back(std::move(m));
        }
        return MkTuple(std::move(elems));
      }
      case IType::K::kMeta:
        break;
    }
    Fail(TypeErrorKind::kAmbiguousSum, span,
         "type of a bare lookup is not determined by its context");
  }

  bool MaskNoop(const ITypeP& t0, const PartySet& theta,
                const SourceSpan& span) {
    ITypeP t = ResolveT(t0);
    switch (t->k) {
      case IType::K::kData: {
        std::optional<PartySet> owners = OwnersOf(t->own);
        if (!owners) {
          Fail(TypeErrorKind::kAmbiguousSum, span,
               "owners of a communicated value are not determined");
        }
        return owners->IsSubsetOf(theta);
      }
      case IType::K::kFun:
        return t->fown.IsSubsetOf(theta);
      case IType::K::kTuple:
        for (const ITypeP& e : t->elems) {
          if (!MaskNoop(e, theta, span)) return false;
        }
        return true;
      case IType::K::kMeta:
        break;
    }
    Fail(TypeErrorKind::kAmbiguousSum, span,
         "type of a bare lookup is not determined by its context");
  }

  // --- rules -----------------------------------------------------------

  void RequireSubset(const PartySet& p, const PartySet& theta,
                     const SourceSpan& span, std::string_view what) {
    if (!p.IsSubsetOf(theta)) {
      Fail(TypeErrorKind::kPartiesNotSubset, span,
           fmt::format("{} {} is not within the participants {}", what,
                       p.ToString(), theta.ToString()));
    }
  }

  ITypeP SynthApp(const Expr& e, const PartySet& theta) {
    Cover(TypingRule::kApp);
    ITypeP f = ResolveT(Synth(*e.fn, theta));
    if (f->k != IType::K::kFun) {
      Fail(TypeErrorKind::kNotAFunction, e.fn->span,
           fmt::format("cannot apply a value of type {}", Show(f)));
    }
    ITypeP a = Synth(*e.arg, theta);
    ITypeP m = Mask(a, f->fown, e.arg->span);
    if (m == nullptr) {
      Fail(TypeErrorKind::kMaskUndefined, e.arg->span,
           fmt::format("argument of type {} cannot be restricted to {}",
                       Show(a), f->fown.ToString()));
    }
    if (!Unify(m, f->arg, e.arg->span)) {
      Fail(TypeErrorKind::kArgMismatch, e.arg->span,
           fmt::format("expected an argument of type {}, found {}",
                       Show(f->arg), Show(m)));
    }
    return f->ret;
  }

  ITypeP SynthCase(const Expr& e, const PartySet& theta) {
    Cover(TypingRule::kCase);
    const PartySet& guards = e.guards;
    const Expr& scrut = *e.arg;
    ITypeP tn = Synth(scrut, theta);
    ITypeP m = Mask(tn, guards, scrut.span);
    if (m == nullptr) {
      Fail(TypeErrorKind::kMaskUndefined, scrut.span,
           fmt::format("guard of type {} is not located at any of {}",
                       Show(tn), guards.ToString()));
    }
    m = ResolveT(m);
    if (m->k != IType::K::kData) {
      Fail(TypeErrorKind::kGuardNotSum, scrut.span,
           fmt::format("guard must be a sum value, found {}", Show(m)));
    }
    if (*OwnersOf(m->own) != guards) {
      Fail(TypeErrorKind::kMaskUndefined, scrut.span,
           fmt::format("guard of type {} is not located at all of {}", Show(tn),
                       guards.ToString()));
    }
    IDataP dl = NewD(false);
    IDataP dr = NewD(false);
    if (!UnifyD(m->d, MkD(IData::K::kSum, dl, dr))) {
      Fail(TypeErrorKind::kGuardNotSum, scrut.span,
           fmt::format("guard must be a sum value, found {}", Show(m)));
    }
    RequireSubset(guards, theta, e.span, "case guard set");
    gamma_.emplace_back(e.left_var, MkData(dl, Fixed(guards)));
    ITypeP tl = Synth(*e.left, guards);
    gamma_.pop_back();
    gamma_.emplace_back(e.right_var, MkData(dr, Fixed(guards)));
    ITypeP tr = Synth(*e.right, guards);
    gamma_.pop_back();
    if (!Unify(tl, tr, e.right->span)) {
      Fail(TypeErrorKind::kBranchMismatch, e.right->span,
           fmt::format("branches disagree: {} versus {}", Show(tl), Show(tr)));
    }
    return tl;
  }

  ITypeP SynthValue(const Value& v, const PartySet& theta) {
    ITypeP t = SynthValueForm(v, theta);
    if (record_) seen_values_.emplace_back(&v, t);
    return t;
  }

  ITypeP SynthValueForm(const Value& v, const PartySet& theta) {
    switch (v.kind) {
      case Value::Kind::kVar: {
        Cover(TypingRule::kVar);
        for (auto it = gamma_.rbegin(); it != gamma_.rend(); ++it) {
          if (it->first != v.name) continue;
          ITypeP m = Mask(it->second, theta, v.span);
          if (m == nullptr) {
            Fail(TypeErrorKind::kMaskUndefined, v.span,
                 fmt::format("{} : {} is not available to {}", v.name,
                             Show(it->second), theta.ToString()));
          }
          return m;
        }
        Fail(TypeErrorKind::kUnboundVar, v.span,
             fmt::format("unbound variable {}", v.name));
      }
      case Value::Kind::kLambda: {
        Cover(TypingRule::kLambda);
        RequireSubset(v.parties, theta, v.span, "lambda owners");
        if (!MaskIsNoop(v.param_type, v.parties)) {
          Fail(TypeErrorKind::kNoopViolation, v.span,
               fmt::format("parameter type {} is not fully available to {}",
                           PrintType(*v.param_type), v.parties.ToString()));
        }
        ITypeP param = FromChor(*v.param_type);
        gamma_.emplace_back(v.name, param);
        ITypeP body = Synth(*v.body, v.parties);
        gamma_.pop_back();
        return MkFun(param, body, v.parties);
      }
      case Value::Kind::kUnit:
        Cover(TypingRule::kUnit);
        RequireSubset(v.parties, theta, v.span, "unit owners");
        return MkData(UnitD(), Fixed(v.parties));
      case Value::Kind::kInl:
      case Value::Kind::kInr: {
        bool left = v.kind == Value::Kind::kInl;
        Cover(left ? TypingRule::kInl : TypingRule::kInr);
        ITypeP inner = ResolveT(SynthValue(*v.elems[0], theta));
        if (inner->k != IType::K::kData) {
          Fail(TypeErrorKind::kArgMismatch, v.span,
               fmt::format("{} expects a data value, found {}",
                           left ? "Inl" : "Inr", Show(inner)));
        }
        IDataP other = NewD(false);
        IDataP sum = left ? MkD(IData::K::kSum, inner->d, other)
                          : MkD(IData::K::kSum, other, inner->d);
        return MkData(std::move(sum), inner->own);
      }
      case Value::Kind::kPair: {
        Cover(TypingRule::kPair);
        ITypeP a = ResolveT(SynthValue(*v.elems[0], theta));
        ITypeP b = ResolveT(SynthValue(*v.elems[1], theta));
        for (const ITypeP& c : {a, b}) {
          if (c->k != IType::K::kData) {
            Fail(TypeErrorKind::kArgMismatch, v.span,
                 fmt::format("Pair expects data values, found {}", Show(c)));
          }
        }
        std::optional<PartySet> oa = OwnersOf(a->own), ob = OwnersOf(b->own);
        if (!oa || !ob) {
          Fail(TypeErrorKind::kAmbiguousSum, v.span,
               "owners of a pair component are not determined");
        }
        std::optional<PartySet> both = oa->Intersect(*ob);
        if (!both) {
          Fail(TypeErrorKind::kPairComponentsDisjoint, v.span,
               fmt::format("pair components are owned by disjoint sets {} and {}",
                           oa->ToString(), ob->ToString()));
        }
        return MkData(MkD(IData::K::kProd, a->d, b->d), Fixed(*both));
      }
      case Value::Kind::kVec: {
        Cover(TypingRule::kVec);
        std::vector<ITypeP> elems;
        for (const ValueP& c : v.elems) elems.push_back(SynthValue(*c, theta));
        return MkTuple(std::move(elems));
      }
      case Value::Kind::kFst:
      case Value::Kind::kSnd: {
        bool first = v.kind == Value::Kind::kFst;
        Cover(first ? TypingRule::kProj1 : TypingRule::kProj2);
        RequireSubset(v.parties, theta, v.span, first ? "fst owners" : "snd owners");
        IDataP a = NewD(false), b = NewD(false);
        return MkFun(MkData(MkD(IData::K::kProd, a, b), Fixed(v.parties)),
                     MkData(first ? a : b, Fixed(v.parties)), v.parties);
      }
      case Value::Kind::kLookup: {
        Cover(TypingRule::kProjN);
        RequireSubset(v.parties, theta, v.span, "lookup owners");
        ITypeP tuple = NewT();
        ITypeP result = NewT();
        tcons_[tuple->id].push_back(
            LookupConstraint{v.index, result, v.parties, v.span});
        return MkFun(tuple, result, v.parties);
      }
      case Value::Kind::kCom: {
        Cover(TypingRule::kCom);
        if (!theta.Contains(v.name)) {
          Fail(TypeErrorKind::kPartiesNotSubset, v.span,
               fmt::format("sender {} is not within the participants {}",
                           v.name, theta.ToString()));
        }
        RequireSubset(v.parties, theta, v.span, "recipients");
        IDataP d = NewD(true);
        PartySet participants = v.parties.Union(PartySet::Single(v.name));
        IOwners sender_side =
            NewO(ComConstraint{v.name, participants, v.span});
        return MkFun(MkData(d, sender_side), MkData(d, Fixed(v.parties)),
                     participants);
      }
    }
    Fail(TypeErrorKind::kArgMismatch, v.span, "unknown value form");
  }

  RuleCoverage* coverage_;
  bool record_ = false;
  std::vector<std::pair<const Expr*, ITypeP>> seen_;
  std::vector<std::pair<const Value*, ITypeP>> seen_values_;
  std::vector<std::pair<std::string, ITypeP>> gamma_;
  std::vector<IDataP> dbind_;
  std::vector<bool> ddefault_;
  std::vector<int> olink_;
  std::vector<std::optional<PartySet>> obind_;
  std::vector<std::vector<ComConstraint>> ocons_;
  std::vector<ITypeP> tbind_;
  std::vector<std::vector<LookupConstraint>> tcons_;
};

}  // namespace

TypeResult Typecheck(const TypeEnv& env, const ExprP& e,
                     RuleCoverage* coverage, SubtermTypes* subterms) {
  Checker checker(coverage);
  checker.Record(subterms);
  try {
    for (const auto& [x, t] : env.bindings) checker.Bind(x, t);
    ITypeP t = checker.Synth(*e, env.theta);
    TypeResult out{checker.ToChor(t, e->span), std::nullopt};
    if (subterms) checker.Export(*subterms);
    return out;
  } catch (TypeFail& f) {
    return TypeResult{nullptr, std::move(f.err)};
  }
}

TypeResult TypecheckAgainst(const TypeEnv& env, const ExprP& e,
                            const ChorTypeP& expected, RuleCoverage* coverage,
                            SubtermTypes* subterms) {
  Checker checker(coverage);
  checker.Record(subterms);
  try {
    for (const auto& [x, t] : env.bindings) checker.Bind(x, t);
    ITypeP t = checker.Synth(*e, env.theta);
    ITypeP want = checker.FromChor(*expected);
    if (!checker.Unify(t, want, e->span)) {
      return TypeResult{
          nullptr,
          TypeError{TypeErrorKind::kArgMismatch, e->span,
                    fmt::format("expected type {}, found {}",
                                PrintType(*expected), checker.Show(t))}};
    }
    TypeResult out{checker.ToChor(t, e->span), std::nullopt};
    if (subterms) checker.Export(*subterms);
    return out;
  } catch (TypeFail& f) {
    return TypeResult{nullptr, std::move(f.err)};
  }
}

PartySet DefaultTheta(const ExprP& program) {
  if (program->is_value() && program->value->kind == Value::Kind::kLambda) {
    return program->value->parties;
  }
  return Roles(program);
}

}  // namespace helam
