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

#include "pubteam/mapping.h"

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "pubteam/generators.h"
#include "pubteam/normal_form.h"
#include "pubteam/solvers.h"
#include "test_util.h"

namespace pubteam {
namespace {

constexpr ConversionMode kModes[] = {
    ConversionMode::kBasic, ConversionMode::kPruned, ConversionMode::kFolded};

Plan RandomPlan(const Information& info, int player, std::mt19937_64& rng) {
  Plan p(info.NumInfosets(player));
  for (int i = 0; i < info.NumInfosets(player); ++i) {
    p[i] = std::uniform_int_distribution<int>(
        0, info.NumActions(player, i) - 1)(rng);
  }
  return p;
}

std::vector<Plan> AllPlans(const Information& info, int player) {
  const int n = info.NumInfosets(player);
  std::vector<Plan> out;
  Plan p(n, 0);
  while (true) {
    out.push_back(p);
    int k = 0;
    while (k < n && ++p[k] == info.NumActions(player, k)) p[k++] = 0;
    if (k == n) return out;
  }
}

ToySpec SeededToy(int chance, int actions, int depth, std::uint64_t seed) {
  ToySpec s;
  s.chance_outcomes = chance;
  s.actions = actions;
  s.depth = depth;
  s.with_opponent = true;
  s.payoff_seed = seed;
  return s;
}

TEST(MappingTest, ToyPayoffEquivalence) {
  for (int chance : {2, 3}) {
    for (int depth : {1, 2}) {
      const Game g = GenerateToy(SeededToy(chance, 2, depth, 17));
      for (ConversionMode m : kModes) {
        const EquivalenceReport r =
            CheckPayoffEquivalence(Convert(g, m), 200, 3);
        EXPECT_EQ(r.samples, 200);
        EXPECT_LE(r.max_abs_diff, 1e-12) << ConversionModeName(m);
      }
    }
  }
}

TEST(MappingTest, KuhnPayoffEquivalence) {
  for (int adv = 0; adv < 3; ++adv) {
    PokerSpec s;
    s.adversary_position = adv;
    const ConvertedGame cg = ConvertFolded(GenerateKuhn3(s));
    EXPECT_LE(CheckPayoffEquivalence(cg, 300, adv).max_abs_diff, 1e-12);
  }
}

// Inputs whose actor order is not common knowledge still convert exactly:
// payoffs match and every mode keeps the original TMECor value.
TEST(MappingTest, NonTurnTakingInputIsTransformed) {
  for (SeenMask deal : {0, 1, 3}) {
    for (SeenMask team : {1, 3, 7}) {
      SCOPED_TRACE(::testing::Message() << deal << "/" << team);
      const Game g = testing::NonTurnTakingGame(deal, team);
      const double value = TmecorBruteForce(g).value;
      for (ConversionMode m : kModes) {
        const ConvertedGame cg = Convert(g, m);
        EXPECT_TRUE(cg.turn_taking_applied || deal == 3);
        EXPECT_LE(CheckPayoffEquivalence(cg, 100, 1).max_abs_diff, 1e-12);
        EXPECT_NEAR(TmecorBruteForce(cg.game).value, value, 1e-9);
      }
    }
  }
}

// Infosets of team members reached by the joint team plan against some
// chance outcome and opponent action.
std::vector<std::vector<char>> ReachedByTeam(const Game& g,
                                             const Information& info,
                                             const JointPlan& team) {
  std::vector<std::vector<char>> out(g.num_players());
  for (int p = 0; p < g.num_players(); ++p) {
    out[p].assign(info.NumInfosets(p), 0);
  }
  std::vector<int> stack = {g.root};
  while (!stack.empty()) {
    const int n = stack.back();
    stack.pop_back();
    const Node& nd = g.nodes[n];
    auto edges = g.Edges(n);
    if (nd.kind == NodeKind::kDecision &&
        g.players[nd.player].role == Role::kTeam) {
      const int i = info.InfosetOf(n);
      out[nd.player][i] = 1;
      stack.push_back(edges[team[nd.player][i]].child);
      continue;
    }
    for (const Edge& e : edges) stack.push_back(e.child);
  }
  return out;
}

// Mapping a team plan to the coordinator and back recovers it on every
// infoset the plan reaches.
TEST(MappingTest, RoundTripIsExhaustive) {
  for (int depth : {1, 2}) {
    const Game g = GenerateToy(SeededToy(2, 2, depth, 1));
    for (ConversionMode m : kModes) {
      const ConvertedGame cg = Convert(g, m);
      const Information src(cg.source);
      const Information conv(cg.game);
      for (const Plan& a : AllPlans(src, 0)) {
        for (const Plan& b : AllPlans(src, 1)) {
          const JointPlan team = {a, b, {}};
          const JointPlan back = MapCoordinatorToTeam(
              cg, src, conv, MapTeamToCoordinator(cg, src, conv, team));
          const auto reached = ReachedByTeam(cg.source, src, team);
          for (int p : {0, 1}) {
            for (int i = 0; i < src.NumInfosets(p); ++i) {
              if (reached[p][i]) EXPECT_EQ(back[p][i], team[p][i]);
            }
          }
        }
      }
    }
  }
}

// Coordinator plans keep their payoff when translated to team plans.
TEST(MappingTest, CoordinatorToTeamPreservesPayoff) {
  const Game g = GenerateToy(SeededToy(3, 3, 1, 5));
  std::mt19937_64 rng(8);
  for (ConversionMode m : kModes) {
    const ConvertedGame cg = Convert(g, m);
    const Information src(cg.source);
    const Information conv(cg.game);
    for (int s = 0; s < 100; ++s) {
      const Plan coord = RandomPlan(conv, cg.coordinator(), rng);
      const Plan opp = RandomPlan(src, cg.source.Opponent(), rng);
      JointPlan team = MapCoordinatorToTeam(cg, src, conv, coord);
      team[cg.source.Opponent()] = opp;
      JointPlan conv_plan(2);
      conv_plan[cg.coordinator()] = coord;
      conv_plan[cg.opponent()] = MapOpponentToConverted(cg, src, conv, opp);
      EXPECT_NEAR(ExpectedValuePure(cg.game, conv, conv_plan),
                  ExpectedValuePure(cg.source, src, team), 1e-12);
      EXPECT_EQ(MapOpponentToSource(cg, src, conv, conv_plan[cg.opponent()]),
                opp);
    }
  }
}

// The behavior strategy of a coordinator mixture earns the mixture's payoff.
TEST(MappingTest, MixtureBehaviorMatchesMixturePayoff) {
  const ConvertedGame cg = ConvertFolded(GenerateToy(SeededToy(2, 3, 2, 6)));
  const Information conv(cg.game);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Plan> plans;
    std::vector<double> weights;
    double z = 0.0;
    for (int k = 0; k < 4; ++k) {
      plans.push_back(RandomPlan(conv, cg.coordinator(), rng));
      weights.push_back(u(rng));
      z += weights.back();
    }
    for (double& w : weights) w /= z;
    const Plan opp = RandomPlan(conv, cg.opponent(), rng);
    double mixed = 0.0;
    for (int k = 0; k < 4; ++k) {
      mixed += weights[k] * ExpectedValuePure(cg.game, conv, {plans[k], opp});
    }
    Profile p = UniformProfile(conv);
    p.probs[cg.coordinator()] =
        BehaviorFromMixture(conv, cg.coordinator(), plans, weights);
    for (int i = 0; i < conv.NumInfosets(cg.opponent()); ++i) {
      auto& dist = p.probs[cg.opponent()][i];
      std::fill(dist.begin(), dist.end(), 0.0);
      dist[opp[i]] = 1.0;
    }
    EXPECT_NEAR(ExpectedValue(cg.game, conv, p), mixed, 1e-9);
  }
}

TEST(MappingTest, NegativeSampleCountIsRejected) {
  const ConvertedGame cg = ConvertFolded(
      testing::MatrixAsTree({{1, -1}, {-1, 1}}, Role::kTeam));
  EXPECT_THROW(CheckPayoffEquivalence(cg, -1, 0), GameError);
  EXPECT_EQ(CheckPayoffEquivalence(cg, 0, 0).samples, 0);
}

}  // namespace
}  // namespace pubteam
