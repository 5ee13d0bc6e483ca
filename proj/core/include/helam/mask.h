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

// The partial restriction operator on types and values. nullopt means the
// restriction is undefined, which callers branch on; it is not an error.

#ifndef HELAM_MASK_H_
#define HELAM_MASK_H_

#include <optional>

#include "helam/ast.h"

namespace helam {

std::optional<ChorTypeP> MaskType(const ChorTypeP& t, const PartySet& theta);
std::optional<ValueP> MaskValue(const ValueP& v, const PartySet& theta);

// T == T masked to theta.
bool MaskIsNoop(const ChorTypeP& t, const PartySet& theta);

}  // namespace helam

#endif  // HELAM_MASK_H_
