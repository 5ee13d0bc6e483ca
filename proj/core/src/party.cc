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

#include "helam/party.h"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace helam {

bool IsValidPartyName(std::string_view name) {
  if (name.empty()) return false;
  auto head = [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
  };
  if (!head(name[0])) return false;
  return std::all_of(name.begin() + 1, name.end(), [&](char c) {
    return head(c) || (c >= '0' && c <= '9');
  });
}

PartySet PartySet::Of(std::vector<PartyName> names) {
  if (names.empty()) {
    throw std::invalid_argument("party set must be nonempty");
  }
  for (const PartyName& n : names) {
    if (!IsValidPartyName(n)) {
      throw std::invalid_argument("invalid party name '" + n + "'");
    }
  }
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return PartySet(std::move(names));
}

PartySet PartySet::Of(std::initializer_list<std::string_view> names) {
  std::vector<PartyName> v;
  for (std::string_view n : names) v.emplace_back(n);
  return Of(std::move(v));
}

PartySet PartySet::Single(PartyName name) { return Of({std::move(name)}); }

bool PartySet::Contains(std::string_view p) const {
  return std::binary_search(members_.begin(), members_.end(), p);
}

bool PartySet::IsSubsetOf(const PartySet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(),
                       members_.begin(), members_.end());
}

std::optional<PartySet> PartySet::Intersect(const PartySet& other) const {
  std::vector<PartyName> out;
  std::set_intersection(members_.begin(), members_.end(),
                        other.members_.begin(), other.members_.end(),
                        std::back_inserter(out));
  if (out.empty()) return std::nullopt;
  return PartySet(std::move(out));
}

PartySet PartySet::Union(const PartySet& other) const {
  std::vector<PartyName> out;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(),
                 other.members_.end(), std::back_inserter(out));
  return PartySet(std::move(out));
}

std::vector<PartyName> PartySet::Minus(const PartySet& other) const {
  std::vector<PartyName> out;
  std::set_difference(members_.begin(), members_.end(),
                      other.members_.begin(), other.members_.end(),
                      std::back_inserter(out));
  return out;
}

std::vector<PartyName> PartySet::Without(std::string_view p) const {
  std::vector<PartyName> out;
  for (const PartyName& m : members_) {
    if (m != p) out.push_back(m);
  }
  return out;
}

std::string PartySet::ToString() const { return FormatPartyList(members_); }

std::string FormatPartyList(const std::vector<PartyName>& names) {
  std::string out = "[";
  for (size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += ", ";
    out += names[i];
  }
  out += "]";
  return out;
}

}  // namespace helam
