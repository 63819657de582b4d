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

#ifndef PUBTEAM_TESTS_TEST_UTIL_H_
#define PUBTEAM_TESTS_TEST_UTIL_H_

#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pubteam/game.h"
#include "pubteam/info.h"

namespace pubteam {
namespace testing {

// Player "t" (given role) picks row r{i} unseen by "o", then "o" picks
// column c{j}. Terminal utility is u[i][j].
inline Game MatrixAsTree(const std::vector<std::vector<double>>& u,
                         Role team_role = Role::kCoordinator) {
  GameBuilder b("matrix", {{"t", team_role}, {"o", Role::kOpponent}});
  std::vector<GameBuilder::EdgeSpec> rows;
  for (std::size_t i = 0; i < u.size(); ++i) {
    std::vector<GameBuilder::EdgeSpec> cols;
    for (std::size_t j = 0; j < u[i].size(); ++j) {
      cols.push_back({b.Label("c" + std::to_string(j)), b.AddTerminal(u[i][j]),
                      0.0, SeenMask{2}});
    }
    rows.push_back({b.Label("r" + std::to_string(i)), b.AddDecision(1, cols),
                    0.0, SeenMask{1}});
  }
  return b.Build(b.AddDecision(0, rows));
}

inline Game MatchingPennies() {
  return MatrixAsTree({{1.0, -1.0}, {-1.0, 1.0}});
}

// Team player t picks x0 or x1 without seeing it, o moves (seen by both),
// then t moves again having forgotten its first action.
inline Game ForgetfulGame() {
  GameBuilder b("forget", {{"t", Role::kTeam}, {"o", Role::kOpponent}});
  std::vector<GameBuilder::EdgeSpec> first;
  for (int i = 0; i < 2; ++i) {
    std::vector<GameBuilder::EdgeSpec> second = {
        {b.Label("y0"), b.AddTerminal(i), 0.0, SeenMask{3}},
        {b.Label("y1"), b.AddTerminal(-i), 0.0, SeenMask{3}}};
    std::vector<GameBuilder::EdgeSpec> opp = {
        {b.Label("z"), b.AddDecision(0, second), 0.0, SeenMask{3}}};
    first.push_back({b.Label("x" + std::to_string(i)), b.AddDecision(1, opp),
                     0.0, SeenMask{0}});
  }
  return b.Build(b.AddDecision(0, first));
}

// Team p1, p2 and opponent o. A chance outcome seen by `deal_mask` decides
// whether p1 or p2 moves; team actions are seen by `team_action_mask`. The
// opponent then moves in an infoset spanning both branches, so its members
// have different actor histories.
inline Game NonTurnTakingGame(SeenMask deal_mask = 1,
                              SeenMask team_action_mask = 3) {
  GameBuilder b("swap", {{"p1", Role::kTeam},
                         {"p2", Role::kTeam},
                         {"o", Role::kOpponent}});
  std::vector<GameBuilder::EdgeSpec> deal;
  for (int c = 0; c < 2; ++c) {
    std::vector<GameBuilder::EdgeSpec> team;
    for (int i = 0; i < 2; ++i) {
      std::vector<GameBuilder::EdgeSpec> last;
      for (int k = 0; k < 2; ++k) {
        const double u = ((i * 7 + k * 5 + c * 11) % 9 - 4) / 4.0;
        last.push_back({b.Label("x" + std::to_string(k)), b.AddTerminal(u),
                        0.0, SeenMask{7}});
      }
      const std::string lab = (c == 0 ? "a" : "b") + std::to_string(i);
      team.push_back(
          {b.Label(lab), b.AddDecision(2, last), 0.0, team_action_mask});
    }
    deal.push_back({b.Label("c" + std::to_string(c)), b.AddDecision(c, team),
                    0.5, deal_mask});
  }
  return b.Build(b.AddChance(deal));
}

// Infoset key with "noop" observations removed.
inline std::string StripNoop(const std::string& key) {
  const std::size_t colon = key.find(':');
  std::string out = key.substr(0, colon + 1);
  std::stringstream rest(key.substr(colon + 1));
  std::string part;
  bool first = true;
  while (std::getline(rest, part, '/')) {
    if (part == "noop") continue;
    if (!first) out += "/";
    out += part;
    first = false;
  }
  return out;
}

// Expected team utility when every infoset plays a random distribution
// looked up by its noop-free key. Entries are created on first use, so two
// games evaluated with the same table face the same behavior.
inline double EvalWithSharedBehavior(
    const Game& g, std::map<std::string, std::vector<double>>& table,
    std::mt19937_64& rng) {
  const Information info(g);
  std::vector<double> reach(g.num_nodes(), 0.0);
  reach[g.root] = 1.0;
  double total = 0.0;
  for (int n : g.PreOrder()) {
    const Node& nd = g.nodes[n];
    auto edges = g.Edges(n);
    if (nd.kind == NodeKind::kTerminal) {
      total += reach[n] * nd.utility;
      continue;
    }
    std::vector<double> probs(edges.size(), 1.0);
    if (nd.kind == NodeKind::kChance) {
      for (std::size_t a = 0; a < edges.size(); ++a) probs[a] = edges[a].prob;
    } else if (edges.size() > 1) {
      const std::string key =
          StripNoop(info.Key(nd.player, info.InfosetOf(n))) + "#" +
          std::to_string(edges.size());
      auto it = table.find(key);
      if (it == table.end()) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<double> p(edges.size());
        double sum = 0.0;
        for (double& v : p) sum += (v = u(rng));
        for (double& v : p) v /= sum;
        it = table.emplace(key, p).first;
      }
      probs = it->second;
    }
    for (std::size_t a = 0; a < edges.size(); ++a) {
      reach[edges[a].child] = reach[n] * probs[a];
    }
  }
  return total;
}

}  // namespace testing
}  // namespace pubteam

#endif  // PUBTEAM_TESTS_TEST_UTIL_H_
