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

#ifndef HELAM_PARTY_H_
#define HELAM_PARTY_H_

#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace helam {

using PartyName = std::string;

// True for names matching [A-Za-z_][A-Za-z0-9_]*.
bool IsValidPartyName(std::string_view name);

// Sorted, duplicate-free set of party names. Every set reachable through the
// public factories is nonempty; the default-constructed empty set only serves
// as a placeholder in AST nodes that carry no annotation.
class PartySet {
 public:
  PartySet() = default;

  // Throws std::invalid_argument on an empty list or an invalid name.
  static PartySet Of(std::vector<PartyName> names);
  static PartySet Of(std::initializer_list<std::string_view> names);
  static PartySet Single(PartyName name);

  const std::vector<PartyName>& members() const { return members_; }
  size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  bool Contains(std::string_view p) const;
  bool IsSubsetOf(const PartySet& other) const;

  // nullopt when the intersection is empty.
  std::optional<PartySet> Intersect(const PartySet& other) const;
  PartySet Union(const PartySet& other) const;
  // Members not in `other`; may be empty, hence a plain vector.
  std::vector<PartyName> Minus(const PartySet& other) const;
  std::vector<PartyName> Without(std::string_view p) const;

  // "[p, q]"
  std::string ToString() const;

  friend bool operator==(const PartySet& a, const PartySet& b) {
    return a.members_ == b.members_;
  }
  friend bool operator!=(const PartySet& a, const PartySet& b) {
    return !(a == b);
  }
  friend bool operator<(const PartySet& a, const PartySet& b) {
    return a.members_ < b.members_;
  }

 private:
  explicit PartySet(std::vector<PartyName> sorted) : members_(std::move(sorted)) {}

  std::vector<PartyName> members_;
};

// "[p, q]" for an arbitrary (possibly empty) sorted name list.
std::string FormatPartyList(const std::vector<PartyName>& names);

}  // namespace helam

#endif  // HELAM_PARTY_H_
