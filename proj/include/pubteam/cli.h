// Copyright 2026 The pubteam Authors
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

#ifndef PUBTEAM_CLI_H_
#define PUBTEAM_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "pubteam/game.h"

namespace pubteam {

// Process exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDiscrepancy = 1;
inline constexpr int kExitInvalidParams = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitValidation = 4;
inline constexpr int kExitTooLarge = 5;
inline constexpr int kExitOriginMismatch = 6;

int ExitCodeFor(ErrorCode code);

// Runs one command. `args` excludes the program name. Data goes to `out`,
// diagnostics to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace pubteam

#endif  // PUBTEAM_CLI_H_
