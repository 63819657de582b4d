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

#ifndef PUBTEAM_GAME_H_
#define PUBTEAM_GAME_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pubteam {

enum class ErrorCode {
  kInvalidArgument,
  kDuplicateNodeId,
  kProbabilityNotNormalized,
  kMissingVisibilityEntry,
  kCyclicStructure,
  kUnknownPlayer,
  kActionMismatchWithinInfoset,
  kNotATeamGame,
  kNotPublicTurnTaking,
  kImperfectRecallInput,
  kExclusionDataMissing,
  kIllegalAction,
  kIllegalPrescription,
  kIncompleteProfile,
  kGameTooLarge,
  kEmptyMatrix,
  kSpecOutOfBounds,
  kNonDivisibleLevelProfile,
  kOriginMismatch,
  kNotTwoPlayerZeroSum,
  kParse,
  kIo,
};

const char* ErrorCodeName(ErrorCode code);

class GameError : public std::runtime_error {
 public:
  GameError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

enum class Role { kTeam, kOpponent, kCoordinator };
enum class NodeKind { kDecision, kChance, kTerminal };

const char* RoleName(Role role);

struct PlayerInfo {
  std::string name;
  Role role;
};

// Bit p is set iff player p sees the edge. Chance has no bit.
using SeenMask = std::uint32_t;
inline constexpr int kMaxPlayers = 32;

struct Edge {
  int label = -1;
  int child = -1;
  double prob = 0.0;  // Chance edges only.
  SeenMask seen = 0;
};

struct Node {
  NodeKind kind = NodeKind::kTerminal;
  int player = -1;
  int first_edge = 0;
  int num_edges = 0;
  double utility = 0.0;  // Team utility; the opponent receives the negation.
  int parent = -1;
  int parent_edge = -1;  // Global edge index leading here.
};

// Immutable game tree with per-edge, per-player visibility. Edges of a node
// are stored contiguously in `edges`. Decision nodes may carry an explicit
// information-set key (used by forgetful abstractions); otherwise infosets are
// derived from visibility.
struct Game {
  std::string name;
  std::vector<PlayerInfo> players;
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  std::vector<std::string> labels;
  int root = -1;
  std::vector<int> infoset_override;  // Per node; -1 means derived.
  std::vector<std::string> override_keys;

  int num_players() const { return static_cast<int>(players.size()); }
  int num_nodes() const { return static_cast<int>(nodes.size()); }
  std::span<const Edge> Edges(int n) const {
    const Node& nd = nodes[n];
    return {edges.data() + nd.first_edge,
            static_cast<std::size_t>(nd.num_edges)};
  }
  const std::string& Label(int id) const { return labels[id]; }
  const std::string& EdgeLabel(const Edge& e) const { return labels[e.label]; }
  bool IsTerminal(int n) const { return nodes[n].kind == NodeKind::kTerminal; }
  bool IsChance(int n) const { return nodes[n].kind == NodeKind::kChance; }
  bool IsDecision(int n) const { return nodes[n].kind == NodeKind::kDecision; }
  bool HasOverride(int n) const {
    return !infoset_override.empty() && infoset_override[n] >= 0;
  }

  int FindPlayer(std::string_view name) const;  // -1 if absent.
  std::vector<int> PlayersWithRole(Role role) const;
  SeenMask MaskOf(std::span<const int> players) const;
  SeenMask TeamMask() const;
  int Opponent() const;  // -1 if absent; throws if several.

  // Nodes in an order where every parent precedes its children.
  std::vector<int> PreOrder() const;
};

// Assembles a Game bottom-up: children are added before their parents, so
// ids follow post-order and the root is added last.
class GameBuilder {
 public:
  struct EdgeSpec {
    int label;
    int child;
    double prob;
    SeenMask seen;
  };

  GameBuilder(std::string name, std::vector<PlayerInfo> players);

  int Label(std::string_view text);
  int AddTerminal(double team_utility);
  int AddChance(std::span<const EdgeSpec> edges);
  int AddDecision(int player, std::span<const EdgeSpec> edges);
  void SetInfosetKey(int node, const std::string& key);
  int num_nodes() const { return static_cast<int>(game_.nodes.size()); }
  const Game& peek() const { return game_; }

  // Validates and returns the game rooted at `root`.
  Game Build(int root);

 private:
  int AddNode(NodeKind kind, int player, std::span<const EdgeSpec> edges);

  Game game_;
  std::unordered_map<std::string, int> label_ids_;
  std::unordered_map<std::string, int> key_ids_;
};

// Checks tree shape, probability normalization, player indices and label
// uniqueness; fills parent links. Throws GameError.
void ValidateAndLink(Game& game);

}  // namespace pubteam

#endif  // PUBTEAM_GAME_H_
