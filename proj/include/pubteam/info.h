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

#ifndef PUBTEAM_INFO_H_
#define PUBTEAM_INFO_H_

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "pubteam/game.h"

namespace pubteam {

// Hash-consed label sequences. Sequence 0 is empty; Extend(s, l) returns the
// id of s followed by label l.
class SequenceTrie {
 public:
  SequenceTrie() : parent_{-1}, label_{-1}, length_{0} {}

  int Extend(int seq, int label);
  int Parent(int seq) const { return parent_[seq]; }
  int LastLabel(int seq) const { return label_[seq]; }
  int Length(int seq) const { return length_[seq]; }
  int size() const { return static_cast<int>(parent_.size()); }
  std::vector<int> Labels(int seq) const;
  bool IsPrefix(int prefix, int seq) const;

 private:
  std::vector<int> parent_;
  std::vector<int> label_;
  std::vector<int> length_;
  std::unordered_map<std::uint64_t, int> children_;
};

// Observation sequences and information sets of every player.
class Information {
 public:
  // With use_overrides, explicit infoset keys stored in the game replace the
  // derived ones for the nodes that carry them.
  explicit Information(const Game& game, bool use_overrides = true);

  const Game& game() const { return *game_; }
  int NumInfosets(int player) const {
    return static_cast<int>(members_[player].size());
  }
  // Infoset index (within the acting player) of a decision node, else -1.
  int InfosetOf(int node) const { return infoset_of_[node]; }
  const std::vector<int>& Members(int player, int infoset) const {
    return members_[player][infoset];
  }
  int NumActions(int player, int infoset) const;
  std::string Key(int player, int infoset) const;
  // -1 if absent.
  int FindInfoset(int player, const std::string& key) const;
  // Observation sequence of `player` on reaching `node`.
  int ObsSeq(int player, int node) const {
    return obs_[static_cast<std::size_t>(node) * num_players_ + player];
  }
  const SequenceTrie& trie() const { return trie_; }
  std::vector<std::string> ObsLabels(int seq) const;
  bool IsOverridden(int player, int infoset) const {
    return overridden_[player][infoset];
  }

  // Infosets of one player sorted by their label sequences (lexicographic on
  // label text). rank[infoset] gives the position.
  const std::vector<int>& CanonicalRank(int player) const;

 private:
  const Game* game_;
  int num_players_;
  SequenceTrie trie_;
  std::vector<int> obs_;
  std::vector<int> infoset_of_;
  std::vector<std::vector<std::vector<int>>> members_;
  std::vector<std::vector<int>> infoset_seq_;  // Obs sequence, or -1 - key.
  std::vector<std::vector<char>> overridden_;
  mutable std::vector<std::vector<int>> rank_;
  mutable std::vector<std::unordered_map<std::string, int>> key_index_;
};

enum class VisibilityClass { kPub, kPriv, kHidden };

const char* VisibilityClassName(VisibilityClass c);

// pub iff every player of the set sees the edge, hidden iff none does.
VisibilityClass DeriveVisibilityClass(const Game& game, int edge,
                                      std::span<const int> players);

struct PublicStates {
  std::vector<int> state_of;  // Per node: dense public-state index.
  std::vector<std::vector<std::string>> keys;  // Label sequence per state.
  int size() const { return static_cast<int>(keys.size()); }
};

// Groups nodes by the subsequence of edges public to `observers`.
PublicStates ComputePublicStates(const Game& game,
                                 std::span<const int> observers);

struct PerfectRecallViolation {
  int player;
  int node_a;
  int node_b;  // Equal to node_a for self-unseen own actions.
  std::string reason;
};

struct PerfectRecallReport {
  bool ok() const { return violations.empty(); }
  std::vector<PerfectRecallViolation> violations;
};

PerfectRecallReport ValidatePerfectRecall(const Game& game);

// Marks every team-member edge as seen by all team members.
Game TeamPerfectRecallRefinement(const Game& game);

// True iff all histories in every infoset share the acting-player sequence
// (chance included).
bool IsPublicTurnTaking(const Game& game);

// Returns the input unchanged if it is already public turn-taking. Otherwise
// assigns one actor per depth level, cycling through chance and the players,
// and inserts single-noop nodes where a history has nothing to play at the
// level; a noop is seen only by its actor.
Game MakePublicTurnTaking(const Game& game);

// The level-cycling construction applied unconditionally: level l belongs to
// chance (l % (N + 1) == 0) or player l % (N + 1) - 1, and single-noop nodes
// fill levels whose owner does not act on a history. A noop is seen by its
// actor and, when the actor is in `share`, by every player in `share`.
Game InsertNoopTurns(const Game& game, SeenMask share = 0);

}  // namespace pubteam

#endif  // PUBTEAM_INFO_H_
