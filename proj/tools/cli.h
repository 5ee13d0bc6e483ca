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

// The `helam` command line: check, run, project, simulate, fmt and
// test-metatheory over .hll files.

#ifndef HELAM_TOOLS_CLI_H_
#define HELAM_TOOLS_CLI_H_

#include <iosfwd>

namespace helam {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRejected = 1;
inline constexpr int kExitUsage = 2;

int RunCli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace helam

#endif  // HELAM_TOOLS_CLI_H_
