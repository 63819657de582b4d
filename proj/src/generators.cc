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

#include "pubteam/generators.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace pubteam {
namespace {

constexpr double kMaxToyNodes = 5e7;
constexpr int kMaxRanks = 13;

SeenMask Bit(int p) { return SeenMask{1} << p; }

class ToyBuilder {
 public:
  explicit ToyBuilder(const ToySpec& spec)
      : spec_(spec),
        builder_("toy", {{"p1", Role::kTeam},
                         {"p2", Role::kTeam},
                         {"o", Role::kOpponent}}) {
    if (spec.payoff_seed) rng_.seed(*spec.payoff_seed);
  }

  Game Run() {
    std::vector<GameBuilder::EdgeSpec> edges;
    for (int c = 0; c < spec_.chance_outcomes; ++c) {
      int child = spec_.both_private ? Private2() : P1(0);
      edges.push_back({builder_.Label("c" + std::to_string(c)), child,
                       1.0 / spec_.chance_outcomes, Bit(kP1)});
    }
    return builder_.Build(builder_.AddChance(edges));
  }

 private:
  static constexpr int kP1 = 0;
  static constexpr int kP2 = 1;
  static constexpr int kOpp = 2;

  int Private2() {
    std::vector<GameBuilder::EdgeSpec> edges;
    for (int c = 0; c < spec_.chance_outcomes; ++c) {
      edges.push_back({builder_.Label("d" + std::to_string(c)), P1(0),
                       1.0 / spec_.chance_outcomes, Bit(kP2)});
    }
    return builder_.AddChance(edges);
  }

  int P1(int level) {
    if (level == spec_.depth) return P2();
    std::vector<GameBuilder::EdgeSpec> edges;
    for (int a = 0; a < spec_.actions; ++a) {
      edges.push_back({builder_.Label("a" + std::to_string(a)), P1(level + 1),
                       0.0, Bit(kP1)});
    }
    return builder_.AddDecision(kP1, edges);
  }

  int P2() {
    std::vector<GameBuilder::EdgeSpec> edges;
    for (int b = 0; b < spec_.actions; ++b) {
      int child = spec_.with_opponent ? Opp() : Leaf();
      edges.push_back({builder_.Label("b" + std::to_string(b)), child, 0.0,
                       Bit(kP2) | (spec_.with_opponent ? Bit(kOpp) : 0)});
    }
    return builder_.AddDecision(kP2, edges);
  }

  int Opp() {
    std::vector<GameBuilder::EdgeSpec> edges;
    for (int x = 0; x < spec_.actions; ++x) {
      edges.push_back(
          {builder_.Label("x" + std::to_string(x)), Leaf(), 0.0, Bit(kOpp)});
    }
    return builder_.AddDecision(kOpp, edges);
  }

  int Leaf() {
    double u = 0.0;
    if (spec_.payoff_seed) {
      u = std::uniform_real_distribution<double>(-1.0, 1.0)(rng_);
    }
    return builder_.AddTerminal(u);
  }

  const ToySpec& spec_;
  GameBuilder builder_;
  std::mt19937_64 rng_;
};

// Shared betting logic for Kuhn and Leduc. Positions act in order 0, 1, 2,
// skipping folded players. A round ends once every non-folded player except
// the last raiser has checked or called since the last raise.
class PokerBuilder {
 public:
  PokerBuilder(const PokerSpec& spec, bool leduc)
      : spec_(spec),
        leduc_(leduc),
        builder_(leduc ? "leduc3" : "kuhn3", Players(spec)) {
    for (int p = 0; p < 3; ++p) all_ |= Bit(p);
  }

  Game Run() {
    std::array<int, 3> hand{-1, -1, -1};
    return builder_.Build(Deal(0, hand));
  }

 private:
  struct Round {
    std::array<double, 3> contrib;
    std::array<bool, 3> folded;
    int cur;
    int raises;
    int checks;
    int last_raiser;
    int stage;  // 0: first round, 1: after the board card.
  };

  static std::vector<PlayerInfo> Players(const PokerSpec& spec) {
    std::vector<PlayerInfo> players;
    for (int p = 0; p < 3; ++p) {
      players.push_back({"p" + std::to_string(p),
                         p == spec.adversary_position ? Role::kOpponent
                                                      : Role::kTeam});
    }
    return players;
  }

  int CopiesLeft(const std::array<int, 3>& hand, int rank) const {
    int copies = leduc_ ? 3 : 1;
    for (int c : hand) copies -= (c == rank);
    return copies;
  }

  int Deal(int player, std::array<int, 3>& hand) {
    if (player == 3) {
      Round round{{1, 1, 1}, {false, false, false}, 0, 0, 0, -1, 0};
      return Bet(hand, -1, round);
    }
    const int deck = (leduc_ ? 3 : 1) * spec_.ranks - player;
    std::vector<GameBuilder::EdgeSpec> edges;
    for (int r = 0; r < spec_.ranks; ++r) {
      int left = CopiesLeft(hand, r);
      if (left == 0) continue;
      hand[player] = r;
      int child = Deal(player + 1, hand);
      hand[player] = -1;
      edges.push_back({builder_.Label("c" + std::to_string(r)), child,
                       static_cast<double>(left) / deck, Bit(player)});
    }
    return builder_.AddChance(edges);
  }

  int Board(const std::array<int, 3>& hand, const Round& prev) {
    const int deck = 3 * spec_.ranks - 3;
    std::vector<GameBuilder::EdgeSpec> edges;
    for (int r = 0; r < spec_.ranks; ++r) {
      int left = CopiesLeft(hand, r);
      if (left == 0) continue;
      Round round{prev.contrib, prev.folded, 0, 0, 0, -1, 1};
      edges.push_back({builder_.Label("b" + std::to_string(r)),
                       Bet(hand, r, round), static_cast<double>(left) / deck,
                       all_});
    }
    return builder_.AddChance(edges);
  }

  int Bet(const std::array<int, 3>& hand, int board, Round round) {
    int active = 0;
    for (bool f : round.folded) active += !f;
    if (active == 1) return Showdown(hand, board, round);
    if (round.checks >= active - (round.last_raiser >= 0 ? 1 : 0)) {
      if (leduc_ && round.stage == 0) return Board(hand, round);
      return Showdown(hand, board, round);
    }
    while (round.folded[round.cur]) round.cur = (round.cur + 1) % 3;
    const int cur = round.cur;
    const double high =
        *std::max_element(round.contrib.begin(), round.contrib.end());
    std::vector<GameBuilder::EdgeSpec> edges;
    Round next = round;
    next.cur = (cur + 1) % 3;
    if (round.contrib[cur] < high) {
      Round fold = next;
      fold.folded[cur] = true;
      edges.push_back({builder_.Label("f"), Bet(hand, board, fold), 0.0, all_});
      Round call = next;
      call.contrib[cur] = high;
      call.checks += 1;
      edges.push_back({builder_.Label("c"), Bet(hand, board, call), 0.0, all_});
    } else {
      Round check = next;
      check.checks += 1;
      edges.push_back(
          {builder_.Label("k"), Bet(hand, board, check), 0.0, all_});
    }
    const int cap = leduc_ ? spec_.raises : 1;
    if (round.raises < cap) {
      Round raise = next;
      double amount = leduc_ ? (round.raises == 0 ? 2.0 : 4.0) : 1.0;
      raise.contrib[cur] = high + amount;
      raise.raises += 1;
      raise.checks = 0;
      raise.last_raiser = cur;
      edges.push_back(
          {builder_.Label("r"), Bet(hand, board, raise), 0.0, all_});
    }
    return builder_.AddDecision(cur, edges);
  }

  int Strength(int card, int board) const {
    if (board >= 0 && card == board) return spec_.ranks + card;
    return card;
  }

  int Showdown(const std::array<int, 3>& hand, int board, const Round& round) {
    double pot = 0.0;
    for (double c : round.contrib) pot += c;
    int best = -1;
    for (int p = 0; p < 3; ++p) {
      if (!round.folded[p]) best = std::max(best, Strength(hand[p], board));
    }
    std::vector<int> winners;
    for (int p = 0; p < 3; ++p) {
      if (!round.folded[p] && Strength(hand[p], board) == best) {
        winners.push_back(p);
      }
    }
    double team = 0.0;
    for (int p = 0; p < 3; ++p) {
      if (p == spec_.adversary_position) continue;
      double delta = -round.contrib[p];
      if (std::find(winners.begin(), winners.end(), p) != winners.end()) {
        delta += pot / winners.size();
      }
      team += delta;
    }
    return builder_.AddTerminal(team);
  }

  const PokerSpec& spec_;
  bool leduc_;
  GameBuilder builder_;
  SeenMask all_ = 0;
};

void CheckPokerSpec(const PokerSpec& spec, bool leduc) {
  if (spec.adversary_position < 0 || spec.adversary_position > 2) {
    throw GameError(ErrorCode::kSpecOutOfBounds,
                    "adversary position must be 0, 1 or 2");
  }
  if (spec.ranks > kMaxRanks) {
    throw GameError(ErrorCode::kSpecOutOfBounds, "too many ranks");
  }
  if (!leduc && spec.ranks < 3) {
    throw GameError(ErrorCode::kSpecOutOfBounds,
                    "Kuhn needs at least 3 ranks for three distinct cards");
  }
  if (leduc && spec.ranks < 2) {
    throw GameError(ErrorCode::kSpecOutOfBounds, "Leduc needs 2+ ranks");
  }
  if (leduc && (spec.raises < 1 || spec.raises > 2)) {
    throw GameError(ErrorCode::kSpecOutOfBounds, "raises must be 1 or 2");
  }
}

}  // namespace

Game GenerateToy(const ToySpec& spec) {
  if (spec.chance_outcomes < 1 || spec.actions < 2 || spec.depth < 1) {
    throw GameError(ErrorCode::kSpecOutOfBounds,
                    "need chance >= 1, actions >= 2, depth >= 1");
  }
  double prefix = spec.chance_outcomes;
  if (spec.both_private) prefix *= spec.chance_outcomes;
  double estimate = prefix * std::pow(spec.actions, spec.depth + 1) *
                    (spec.with_opponent ? spec.actions : 1) * 2.0;
  if (estimate > kMaxToyNodes) {
    throw GameError(ErrorCode::kSpecOutOfBounds, "toy game too large");
  }
  return ToyBuilder(spec).Run();
}

Game GenerateKuhn3(const PokerSpec& spec) {
  CheckPokerSpec(spec, false);
  return PokerBuilder(spec, false).Run();
}

Game GenerateLeduc3(const PokerSpec& spec) {
  CheckPokerSpec(spec, true);
  return PokerBuilder(spec, true).Run();
}

}  // namespace pubteam
