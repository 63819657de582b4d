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

#include "pubteam/game.h"

#include <cmath>
#include <unordered_set>

namespace pubteam {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDuplicateNodeId: return "DuplicateNodeId";
    case ErrorCode::kProbabilityNotNormalized:
      return "ProbabilityNotNormalized";
    case ErrorCode::kMissingVisibilityEntry: return "MissingVisibilityEntry";
    case ErrorCode::kCyclicStructure: return "CyclicStructure";
    case ErrorCode::kUnknownPlayer: return "UnknownPlayer";
    case ErrorCode::kActionMismatchWithinInfoset:
      return "ActionMismatchWithinInfoset";
    case ErrorCode::kNotATeamGame: return "NotATeamGame";
    case ErrorCode::kNotPublicTurnTaking: return "NotPublicTurnTaking";
    case ErrorCode::kImperfectRecallInput: return "ImperfectRecallInput";
    case ErrorCode::kExclusionDataMissing: return "ExclusionDataMissing";
    case ErrorCode::kIllegalAction: return "IllegalActionInPlan";
    case ErrorCode::kIllegalPrescription: return "IllegalPrescription";
    case ErrorCode::kIncompleteProfile: return "IncompleteProfile";
    case ErrorCode::kGameTooLarge: return "GameTooLarge";
    case ErrorCode::kEmptyMatrix: return "EmptyMatrix";
    case ErrorCode::kSpecOutOfBounds: return "SpecOutOfBounds";
    case ErrorCode::kNonDivisibleLevelProfile:
      return "NonDivisibleLevelProfile";
    case ErrorCode::kOriginMismatch: return "OriginMismatch";
    case ErrorCode::kNotTwoPlayerZeroSum: return "NotTwoPlayerZeroSum";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

const char* RoleName(Role role) {
  switch (role) {
    case Role::kTeam: return "team";
    case Role::kOpponent: return "opponent";
    case Role::kCoordinator: return "coordinator";
  }
  return "unknown";
}

int Game::FindPlayer(std::string_view name) const {
  for (int p = 0; p < num_players(); ++p) {
    if (players[p].name == name) return p;
  }
  return -1;
}

std::vector<int> Game::PlayersWithRole(Role role) const {
  std::vector<int> out;
  for (int p = 0; p < num_players(); ++p) {
    if (players[p].role == role) out.push_back(p);
  }
  return out;
}

SeenMask Game::MaskOf(std::span<const int> ps) const {
  SeenMask mask = 0;
  for (int p : ps) {
    if (p < 0 || p >= num_players()) {
      throw GameError(ErrorCode::kUnknownPlayer, std::to_string(p));
    }
    mask |= SeenMask{1} << p;
  }
  return mask;
}

SeenMask Game::TeamMask() const {
  std::vector<int> team = PlayersWithRole(Role::kTeam);
  return MaskOf(team);
}

int Game::Opponent() const {
  std::vector<int> opp = PlayersWithRole(Role::kOpponent);
  if (opp.size() > 1) {
    throw GameError(ErrorCode::kNotATeamGame, "more than one opponent");
  }
  return opp.empty() ? -1 : opp[0];
}

std::vector<int> Game::PreOrder() const {
  std::vector<int> order;
  order.reserve(nodes.size());
  std::vector<int> stack = {root};
  while (!stack.empty()) {
    int n = stack.back();
    stack.pop_back();
    order.push_back(n);
    std::span<const Edge> es = Edges(n);
    for (auto it = es.rbegin(); it != es.rend(); ++it) stack.push_back(it->child);
  }
  return order;
}

GameBuilder::GameBuilder(std::string name, std::vector<PlayerInfo> players) {
  if (players.size() > kMaxPlayers) {
    throw GameError(ErrorCode::kInvalidArgument, "too many players");
  }
  game_.name = std::move(name);
  game_.players = std::move(players);
}

int GameBuilder::Label(std::string_view text) {
  auto [it, inserted] =
      label_ids_.try_emplace(std::string(text), game_.labels.size());
  if (inserted) game_.labels.emplace_back(text);
  return it->second;
}

int GameBuilder::AddNode(NodeKind kind, int player,
                         std::span<const EdgeSpec> edges) {
  Node node;
  node.kind = kind;
  node.player = player;
  node.first_edge = static_cast<int>(game_.edges.size());
  node.num_edges = static_cast<int>(edges.size());
  for (const EdgeSpec& e : edges) {
    game_.edges.push_back(Edge{e.label, e.child, e.prob, e.seen});
  }
  game_.nodes.push_back(node);
  if (!game_.infoset_override.empty()) game_.infoset_override.push_back(-1);
  return static_cast<int>(game_.nodes.size()) - 1;
}

int GameBuilder::AddTerminal(double team_utility) {
  int id = AddNode(NodeKind::kTerminal, -1, {});
  game_.nodes[id].utility = team_utility;
  return id;
}

int GameBuilder::AddChance(std::span<const EdgeSpec> edges) {
  return AddNode(NodeKind::kChance, -1, edges);
}

int GameBuilder::AddDecision(int player, std::span<const EdgeSpec> edges) {
  return AddNode(NodeKind::kDecision, player, edges);
}

void GameBuilder::SetInfosetKey(int node, const std::string& key) {
  if (game_.infoset_override.empty()) {
    game_.infoset_override.assign(game_.nodes.size(), -1);
  }
  auto [it, inserted] =
      key_ids_.try_emplace(key, game_.override_keys.size());
  if (inserted) game_.override_keys.push_back(key);
  game_.infoset_override[node] = it->second;
}

Game GameBuilder::Build(int root) {
  game_.root = root;
  ValidateAndLink(game_);
  return std::move(game_);
}

void ValidateAndLink(Game& game) {
  const int n = game.num_nodes();
  if (game.root < 0 || game.root >= n) {
    throw GameError(ErrorCode::kInvalidArgument, "root out of range");
  }
  for (Node& node : game.nodes) {
    node.parent = -1;
    node.parent_edge = -1;
  }
  const SeenMask all_players =
      game.num_players() == kMaxPlayers
          ? ~SeenMask{0}
          : (SeenMask{1} << game.num_players()) - 1;
  for (int id = 0; id < n; ++id) {
    Node& node = game.nodes[id];
    if (node.first_edge < 0 || node.num_edges < 0 ||
        node.first_edge + node.num_edges >
            static_cast<int>(game.edges.size())) {
      throw GameError(ErrorCode::kInvalidArgument, "edge range");
    }
    if (node.kind == NodeKind::kTerminal && node.num_edges != 0) {
      throw GameError(ErrorCode::kInvalidArgument, "terminal with edges");
    }
    if (node.kind != NodeKind::kTerminal && node.num_edges == 0) {
      throw GameError(ErrorCode::kInvalidArgument,
                      "non-terminal node " + std::to_string(id) +
                          " without edges");
    }
    if (node.kind == NodeKind::kDecision &&
        (node.player < 0 || node.player >= game.num_players())) {
      throw GameError(ErrorCode::kUnknownPlayer,
                      "node " + std::to_string(id));
    }
    std::unordered_set<int> seen_labels;
    double total = 0.0;
    for (int e = node.first_edge; e < node.first_edge + node.num_edges; ++e) {
      const Edge& edge = game.edges[e];
      if (edge.child < 0 || edge.child >= n) {
        throw GameError(ErrorCode::kInvalidArgument, "child out of range");
      }
      if (edge.label < 0 || edge.label >= static_cast<int>(game.labels.size())) {
        throw GameError(ErrorCode::kInvalidArgument, "label out of range");
      }
      if ((edge.seen & ~all_players) != 0) {
        throw GameError(ErrorCode::kUnknownPlayer, "visibility bit");
      }
      if (!seen_labels.insert(edge.label).second) {
        throw GameError(ErrorCode::kInvalidArgument,
                        "duplicate label " + game.Label(edge.label) +
                            " at node " + std::to_string(id));
      }
      Node& child = game.nodes[edge.child];
      if (child.parent != -1 || edge.child == game.root) {
        throw GameError(ErrorCode::kCyclicStructure,
                        "node " + std::to_string(edge.child) +
                            " has several parents");
      }
      child.parent = id;
      child.parent_edge = e;
      if (node.kind == NodeKind::kChance) {
        if (!(edge.prob >= 0.0 && edge.prob <= 1.0)) {
          throw GameError(ErrorCode::kProbabilityNotNormalized,
                          "probability outside [0,1]");
        }
        total += edge.prob;
      }
    }
    if (node.kind == NodeKind::kChance && std::abs(total - 1.0) > 1e-12) {
      throw GameError(ErrorCode::kProbabilityNotNormalized,
                      "chance node " + std::to_string(id) + " sums to " +
                          std::to_string(total));
    }
  }
  // Every node must hang below the root; a parentless non-root or a detached
  // loop means the structure is not a tree.
  std::vector<int> order = game.PreOrder();
  if (static_cast<int>(order.size()) != n) {
    throw GameError(ErrorCode::kCyclicStructure,
                    "nodes unreachable from the root");
  }
  if (!game.infoset_override.empty() &&
      static_cast<int>(game.infoset_override.size()) != n) {
    throw GameError(ErrorCode::kInvalidArgument, "override size");
  }
}

}  // namespace pubteam
