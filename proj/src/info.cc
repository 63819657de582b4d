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

#include "pubteam/info.h"

#include <algorithm>
#include <numeric>

namespace pubteam {

int SequenceTrie::Extend(int seq, int label) {
  std::uint64_t key = (static_cast<std::uint64_t>(seq) << 32) |
                      static_cast<std::uint32_t>(label);
  auto [it, inserted] = children_.try_emplace(key, size());
  if (inserted) {
    parent_.push_back(seq);
    label_.push_back(label);
    length_.push_back(length_[seq] + 1);
  }
  return it->second;
}

std::vector<int> SequenceTrie::Labels(int seq) const {
  std::vector<int> out(length_[seq]);
  for (int i = length_[seq] - 1; i >= 0; --i) {
    out[i] = label_[seq];
    seq = parent_[seq];
  }
  return out;
}

bool SequenceTrie::IsPrefix(int prefix, int seq) const {
  if (length_[prefix] > length_[seq]) return false;
  while (length_[seq] > length_[prefix]) seq = parent_[seq];
  return seq == prefix;
}

Information::Information(const Game& game, bool use_overrides)
    : game_(&game), num_players_(game.num_players()) {
  const int n = game.num_nodes();
  obs_.assign(static_cast<std::size_t>(n) * num_players_, 0);
  infoset_of_.assign(n, -1);
  members_.resize(num_players_);
  infoset_seq_.resize(num_players_);
  overridden_.resize(num_players_);
  std::vector<std::unordered_map<long long, int>> index(num_players_);
  for (int node : game.PreOrder()) {
    const Node& nd = game.nodes[node];
    if (nd.kind == NodeKind::kDecision) {
      const int p = nd.player;
      const bool over = use_overrides && game.HasOverride(node);
      long long key =
          over ? -1LL - game.infoset_override[node] : ObsSeq(p, node);
      auto [it, inserted] = index[p].try_emplace(key, members_[p].size());
      if (inserted) {
        members_[p].emplace_back();
        infoset_seq_[p].push_back(static_cast<int>(key));
        overridden_[p].push_back(over);
      } else {
        int first = members_[p][it->second].front();
        std::span<const Edge> a = game.Edges(first);
        std::span<const Edge> b = game.Edges(node);
        bool same = a.size() == b.size();
        for (std::size_t i = 0; same && i < a.size(); ++i) {
          same = game.EdgeLabel(a[i]) == game.EdgeLabel(b[i]);
        }
        if (!same) {
          throw GameError(ErrorCode::kActionMismatchWithinInfoset,
                          "nodes " + std::to_string(first) + " and " +
                              std::to_string(node));
        }
      }
      members_[p][it->second].push_back(node);
      infoset_of_[node] = it->second;
    }
    for (const Edge& e : game.Edges(node)) {
      for (int p = 0; p < num_players_; ++p) {
        int seq = ObsSeq(p, node);
        if (e.seen & (SeenMask{1} << p)) seq = trie_.Extend(seq, e.label);
        obs_[static_cast<std::size_t>(e.child) * num_players_ + p] = seq;
      }
    }
  }
  rank_.resize(num_players_);
  key_index_.resize(num_players_);
}

int Information::NumActions(int player, int infoset) const {
  return game_->nodes[members_[player][infoset].front()].num_edges;
}

std::vector<std::string> Information::ObsLabels(int seq) const {
  std::vector<std::string> out;
  for (int l : trie_.Labels(seq)) out.push_back(game_->Label(l));
  return out;
}

std::string Information::Key(int player, int infoset) const {
  int seq = infoset_seq_[player][infoset];
  if (overridden_[player][infoset]) return game_->override_keys[-1 - seq];
  std::string key = game_->players[player].name + ":";
  bool first = true;
  for (int l : trie_.Labels(seq)) {
    if (!first) key += '/';
    key += game_->Label(l);
    first = false;
  }
  return key;
}

int Information::FindInfoset(int player, const std::string& key) const {
  auto& index = key_index_[player];
  if (index.empty()) {
    for (int i = 0; i < NumInfosets(player); ++i) index[Key(player, i)] = i;
  }
  auto it = index.find(key);
  return it == index.end() ? -1 : it->second;
}

const std::vector<int>& Information::CanonicalRank(int player) const {
  std::vector<int>& rank = rank_[player];
  if (!rank.empty() || NumInfosets(player) == 0) return rank;
  const int count = NumInfosets(player);
  std::vector<std::vector<std::string>> text(count);
  for (int i = 0; i < count; ++i) {
    int seq = infoset_seq_[player][i];
    text[i] = overridden_[player][i]
                  ? std::vector<std::string>{game_->override_keys[-1 - seq]}
                  : ObsLabels(seq);
  }
  std::vector<int> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return text[a] < text[b]; });
  rank.assign(count, 0);
  for (int i = 0; i < count; ++i) rank[order[i]] = i;
  return rank;
}

const char* VisibilityClassName(VisibilityClass c) {
  switch (c) {
    case VisibilityClass::kPub: return "pub";
    case VisibilityClass::kPriv: return "priv";
    case VisibilityClass::kHidden: return "hidden";
  }
  return "unknown";
}

VisibilityClass DeriveVisibilityClass(const Game& game, int edge,
                                      std::span<const int> players) {
  if (edge < 0 || edge >= static_cast<int>(game.edges.size())) {
    throw GameError(ErrorCode::kInvalidArgument, "edge out of range");
  }
  const SeenMask mask = game.MaskOf(players);
  const SeenMask seen = game.edges[edge].seen & mask;
  if (seen == mask) return VisibilityClass::kPub;
  if (seen == 0) return VisibilityClass::kHidden;
  return VisibilityClass::kPriv;
}

PublicStates ComputePublicStates(const Game& game,
                                 std::span<const int> observers) {
  const SeenMask mask = game.MaskOf(observers);
  SequenceTrie trie;
  std::vector<int> seq(game.num_nodes(), 0);
  for (int node : game.PreOrder()) {
    for (const Edge& e : game.Edges(node)) {
      seq[e.child] =
          (e.seen & mask) == mask ? trie.Extend(seq[node], e.label) : seq[node];
    }
  }
  PublicStates out;
  out.state_of.assign(game.num_nodes(), -1);
  std::unordered_map<int, int> dense;
  for (int node : game.PreOrder()) {
    auto [it, inserted] = dense.try_emplace(seq[node], out.keys.size());
    if (inserted) {
      std::vector<std::string> key;
      for (int l : trie.Labels(seq[node])) key.push_back(game.Label(l));
      out.keys.push_back(std::move(key));
    }
    out.state_of[node] = it->second;
  }
  return out;
}

PerfectRecallReport ValidatePerfectRecall(const Game& game) {
  PerfectRecallReport report;
  for (int node = 0; node < game.num_nodes(); ++node) {
    const Node& nd = game.nodes[node];
    if (nd.kind != NodeKind::kDecision) continue;
    for (const Edge& e : game.Edges(node)) {
      if (!(e.seen & (SeenMask{1} << nd.player))) {
        report.violations.push_back(
            {nd.player, node, node,
             "own action " + game.EdgeLabel(e) + " unseen by the actor"});
      }
    }
  }
  Information info(game);
  // Sequence of (own infoset, action) pairs of every player along each path.
  SequenceTrie own;
  std::unordered_map<long long, int> pair_id;
  const int np = game.num_players();
  std::vector<int> own_seq(static_cast<std::size_t>(game.num_nodes()) * np, 0);
  for (int node : game.PreOrder()) {
    const Node& nd = game.nodes[node];
    for (int k = 0; k < nd.num_edges; ++k) {
      const Edge& e = game.edges[nd.first_edge + k];
      for (int p = 0; p < np; ++p) {
        int s = own_seq[static_cast<std::size_t>(node) * np + p];
        if (nd.kind == NodeKind::kDecision && nd.player == p) {
          long long code =
              static_cast<long long>(info.InfosetOf(node)) * 1000003LL + k;
          auto [it, ins] = pair_id.try_emplace(code, pair_id.size());
          s = own.Extend(s, it->second);
        }
        own_seq[static_cast<std::size_t>(e.child) * np + p] = s;
      }
    }
  }
  for (int p = 0; p < np; ++p) {
    for (int i = 0; i < info.NumInfosets(p); ++i) {
      const std::vector<int>& members = info.Members(p, i);
      int ref = own_seq[static_cast<std::size_t>(members[0]) * np + p];
      for (int m : members) {
        if (own_seq[static_cast<std::size_t>(m) * np + p] != ref) {
          report.violations.push_back(
              {p, members[0], m, "different own action histories"});
          break;
        }
      }
    }
  }
  return report;
}

Game TeamPerfectRecallRefinement(const Game& game) {
  std::vector<int> team = game.PlayersWithRole(Role::kTeam);
  if (team.empty()) {
    throw GameError(ErrorCode::kNotATeamGame, "no team members");
  }
  game.Opponent();  // Throws when several opponents exist.
  const SeenMask mask = game.MaskOf(team);
  Game out = game;
  for (const Node& nd : out.nodes) {
    if (nd.kind != NodeKind::kDecision ||
        out.players[nd.player].role != Role::kTeam) {
      continue;
    }
    for (int e = nd.first_edge; e < nd.first_edge + nd.num_edges; ++e) {
      out.edges[e].seen |= mask;
    }
  }
  return out;
}

bool IsPublicTurnTaking(const Game& game) {
  Information info(game);
  SequenceTrie actors;
  const int chance_actor = game.num_players();
  std::vector<int> seq(game.num_nodes(), 0);
  for (int node : game.PreOrder()) {
    const Node& nd = game.nodes[node];
    if (nd.kind == NodeKind::kTerminal) continue;
    int actor = nd.kind == NodeKind::kChance ? chance_actor : nd.player;
    int next = actors.Extend(seq[node], actor);
    for (const Edge& e : game.Edges(node)) seq[e.child] = next;
  }
  for (int p = 0; p < game.num_players(); ++p) {
    for (int i = 0; i < info.NumInfosets(p); ++i) {
      const std::vector<int>& members = info.Members(p, i);
      for (int m : members) {
        if (seq[m] != seq[members[0]]) return false;
      }
    }
  }
  return true;
}

namespace {

class TurnTakingBuilder {
 public:
  TurnTakingBuilder(const Game& game, SeenMask share)
      : game_(game),
        share_(share),
        builder_(game.name, game.players),
        obs_(game.num_players()) {
    cycle_.push_back(-1);
    for (int p = 0; p < game.num_players(); ++p) cycle_.push_back(p);
    noop_ = builder_.Label("noop");
  }

  Game Run() {
    int root = Visit(game_.root, 0);
    return builder_.Build(root);
  }

 private:
  int Visit(int node, int level) {
    const Node& nd = game_.nodes[node];
    if (nd.kind == NodeKind::kTerminal) return builder_.AddTerminal(nd.utility);
    const int actor = nd.kind == NodeKind::kChance ? -1 : nd.player;
    const int slot = cycle_[level % cycle_.size()];
    if (slot != actor) {
      if (slot == -1) {
        GameBuilder::EdgeSpec e{noop_, Visit(node, level + 1), 1.0, 0};
        return builder_.AddChance({&e, 1});
      }
      // A noop node gets its own infoset, keyed by what its player has seen,
      // so it never joins an infoset of real decisions.
      std::string key = game_.players[slot].name + ":";
      for (std::size_t i = 0; i < obs_[slot].size(); ++i) {
        if (i) key += '/';
        key += obs_[slot][i];
      }
      key += "#noop";
      SeenMask seen = SeenMask{1} << slot;
      if (seen & share_) seen |= share_;
      for (int p = 0; p < game_.num_players(); ++p) {
        if (seen >> p & 1) obs_[p].push_back("noop");
      }
      GameBuilder::EdgeSpec e{noop_, Visit(node, level + 1), 0.0, seen};
      for (int p = 0; p < game_.num_players(); ++p) {
        if (seen >> p & 1) obs_[p].pop_back();
      }
      const int id = builder_.AddDecision(slot, {&e, 1});
      builder_.SetInfosetKey(id, key);
      return id;
    }
    std::vector<GameBuilder::EdgeSpec> edges;
    for (const Edge& e : game_.Edges(node)) {
      for (int p = 0; p < game_.num_players(); ++p) {
        if (e.seen >> p & 1) obs_[p].push_back(game_.EdgeLabel(e));
      }
      int child = Visit(e.child, level + 1);
      for (int p = 0; p < game_.num_players(); ++p) {
        if (e.seen >> p & 1) obs_[p].pop_back();
      }
      edges.push_back({builder_.Label(game_.EdgeLabel(e)), child, e.prob,
                       e.seen});
    }
    const int id = actor == -1 ? builder_.AddChance(edges)
                               : builder_.AddDecision(actor, edges);
    if (!game_.infoset_override.empty() && game_.infoset_override[node] >= 0) {
      builder_.SetInfosetKey(
          id, game_.override_keys[game_.infoset_override[node]]);
    }
    return id;
  }

  const Game& game_;
  SeenMask share_;
  GameBuilder builder_;
  std::vector<int> cycle_;
  int noop_;
  // Labels seen so far by each player on the current path.
  std::vector<std::vector<std::string>> obs_;
};

}  // namespace

Game MakePublicTurnTaking(const Game& game) {
  if (IsPublicTurnTaking(game)) return game;
  return InsertNoopTurns(game);
}

Game InsertNoopTurns(const Game& game, SeenMask share) {
  return TurnTakingBuilder(game, share).Run();
}

}  // namespace pubteam
