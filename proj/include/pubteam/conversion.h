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

#ifndef PUBTEAM_CONVERSION_H_
#define PUBTEAM_CONVERSION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "pubteam/game.h"
#include "pubteam/info.h"

namespace pubteam {

enum class ConversionMode { kBasic, kPruned, kFolded };

const char* ConversionModeName(ConversionMode mode);
ConversionMode ParseConversionMode(const std::string& name);

enum class OriginKind : std::uint8_t {
  kChance,
  kOpponent,
  kTerminal,
  kCoordinator,
  kPrescriptionChance,
};

const char* OriginKindName(OriginKind kind);

struct World {
  int node;
  double weight;
};

struct NodeOrigin {
  OriginKind kind = OriginKind::kChance;
  int source = -1;  // A source node this converted node stands for.
  int member = -1;  // Acting team member (coordinator and prescription chance).
  int domain = -1;  // Index into ConvertedGame::domains.
  int belief = -1;  // Index into ConvertedGame::beliefs (folded coordinators).
  int safe_ir_key = -1;  // Index into ConvertedGame::safe_ir_keys.
};

// A team game rewritten as a coordinator-vs-opponent game. `source` is the
// prepared original (team perfect-recall refinement applied, public
// turn-taking enforced); all original infoset ids refer to Information(source).
struct ConvertedGame {
  Game game;
  Game source;
  std::uint64_t source_fingerprint = 0;
  ConversionMode mode = ConversionMode::kBasic;
  bool safe_ir_applied = false;
  bool turn_taking_applied = false;
  std::vector<NodeOrigin> origin;
  // Prescription domains: original infosets of one member, canonical order.
  std::vector<std::vector<int>> domains;
  std::vector<std::vector<World>> beliefs;
  std::vector<std::string> safe_ir_keys;

  int coordinator() const { return 0; }
  int opponent() const { return 1; }

  // Action (index into the member's infoset actions) that prescription edge
  // `k` of coordinator node `node` assigns to each domain infoset.
  std::vector<int> Prescription(const Information& source_info, int node,
                                int k) const;
  // Edge index of the prescription assigning `actions` to the domain.
  int PrescriptionIndex(const Information& source_info, int node,
                        const std::vector<int>& actions) const;
};

// Refinement + turn-taking, as applied by the converters. With
// force_noop_turns the noop construction runs even on public turn-taking
// input.
Game PrepareForConversion(const Game& game, bool* turn_taking_applied,
                          bool force_noop_turns = false);

ConvertedGame Convert(const Game& game, ConversionMode mode);
inline ConvertedGame ConvertBasic(const Game& game) {
  return Convert(game, ConversionMode::kBasic);
}
inline ConvertedGame ConvertPruned(const Game& game) {
  return Convert(game, ConversionMode::kPruned);
}
inline ConvertedGame ConvertFolded(const Game& game) {
  return Convert(game, ConversionMode::kFolded);
}

// Coordinator infosets forget prescription components addressed to private
// states that are no longer possible. Node count is unchanged.
ConvertedGame ApplySafeImperfectRecall(const ConvertedGame& cg);

// Per coordinator node: infosets of the acting member in its team-public
// state that are not in the prescription domain. Empty for other nodes.
std::vector<std::vector<int>> ExcludedInfosets(const ConvertedGame& cg,
                                               const Information& source_info);

}  // namespace pubteam

#endif  // PUBTEAM_CONVERSION_H_
