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

#include "helam/mask.h"

namespace helam {

std::optional<ChorTypeP> MaskType(const ChorTypeP& t, const PartySet& theta) {
  switch (t->kind) {
    case ChorType::Kind::kData: {
      if (t->owners.IsSubsetOf(theta)) return t;
      std::optional<PartySet> owners = t->owners.Intersect(theta);
      if (!owners) return std::nullopt;
      return ChorType::Data(t->data, *std::move(owners));
    }
    case ChorType::Kind::kFun:
      if (!t->owners.IsSubsetOf(theta)) return std::nullopt;
      return t;
    case ChorType::Kind::kTuple: {
      std::vector<ChorTypeP> elems;
      elems.reserve(t->elems.size());
      bool changed = false;
      for (const ChorTypeP& e : t->elems) {
        std::optional<ChorTypeP> m = MaskType(e, theta);
        if (!m) return std::nullopt;
        changed |= m->get() != e.get();
        elems.push_back(*std::move(m));
      }
      if (!changed) return t;
      return ChorType::Tuple(std::move(elems));
    }
  }
  return std::nullopt;
}

bool MaskIsNoop(const ChorTypeP& t, const PartySet& theta) {
  std::optional<ChorTypeP> m = MaskType(t, theta);
  return m && TypeEqual(**m, *t);
}

std::optional<ValueP> MaskValue(const ValueP& v, const PartySet& theta) {
  switch (v->kind) {
    case Value::Kind::kVar:
      return v;
    case Value::Kind::kLambda:
    case Value::Kind::kFst:
    case Value::Kind::kSnd:
    case Value::Kind::kLookup:
      if (!v->parties.IsSubsetOf(theta)) return std::nullopt;
      return v;
    case Value::Kind::kCom:
      if (!theta.Contains(v->name) || !v->parties.IsSubsetOf(theta)) {
        return std::nullopt;
      }
      return v;
    case Value::Kind::kUnit: {
      if (v->parties.IsSubsetOf(theta)) return v;
      std::optional<PartySet> owners = v->parties.Intersect(theta);
      if (!owners) return std::nullopt;
      return Value::Unit(*std::move(owners), v->span);
    }
    case Value::Kind::kInl:
    case Value::Kind::kInr:
    case Value::Kind::kPair:
    case Value::Kind::kVec: {
      std::vector<ValueP> elems;
      elems.reserve(v->elems.size());
      bool changed = false;
      for (const ValueP& c : v->elems) {
        std::optional<ValueP> m = MaskValue(c, theta);
        if (!m) return std::nullopt;
        changed |= m->get() != c.get();
        elems.push_back(*std::move(m));
      }
      if (!changed) return v;
      auto out = std::make_shared<Value>(*v);
      out->elems = std::move(elems);
      return ValueP(std::move(out));
    }
  }
  return std::nullopt;
}

}  // namespace helam
