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

#ifndef PUBTEAM_JSON_IO_H_
#define PUBTEAM_JSON_IO_H_

#include <cstdint>
#include <string>

#include "json.hpp"
#include "pubteam/conversion.h"
#include "pubteam/game.h"

namespace pubteam {

using json = nlohmann::json;

// Schema:
//   {"name", "players": [{"name", "role"}], "root",
//    "nodes": [{"id", "kind", "player"?, "infoset"?, "team_utility"?,
//               "edges": [{"label", "child", "prob"?, "vis": {name: seen}}]}]}
json GameToJson(const Game& game);
Game GameFromJson(const json& j);

// Converted games add an "origin" section holding the prepared source game,
// the fingerprint of the unprepared input, and per-node bookkeeping.
// Coordinator edges list their prescription as [{"infoset", "action"}].
json ConvertedToJson(const ConvertedGame& cg);
ConvertedGame ConvertedFromJson(const json& j);
bool HasOrigin(const json& j);

// FNV-1a of the compact canonical JSON form.
std::uint64_t Fingerprint(const Game& game);
std::string FingerprintHex(std::uint64_t fingerprint);

json LoadJsonFile(const std::string& path);
void SaveJsonFile(const std::string& path, const json& j);

}  // namespace pubteam

#endif  // PUBTEAM_JSON_IO_H_
