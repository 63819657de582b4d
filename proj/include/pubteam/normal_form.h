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

#ifndef PUBTEAM_NORMAL_FORM_H_
#define PUBTEAM_NORMAL_FORM_H_

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "pubteam/game.h"
#include "pubteam/info.h"

namespace pubteam {

// Action index per infoset of one player; -1 where the plan is silent.
using Plan = std::vector<int>;
// One plan per player id; entries of players without decisions are empty.
using JointPlan = std::vector<Plan>;

// Sequence structure of one player with perfect recall.
class PlanTree {
 public:
  // Throws kImperfectRecallInput if `player` forgets own actions.
  PlanTree(const Information& info, int player);

  int player() const { return player_; }
  int num_infosets() const { return static_cast<int>(parent_.size()); }
  int NumActions(int infoset) const { return num_actions_[infoset]; }
  const std::vector<int>& roots() const { return roots_; }
  // Infosets whose closest own predecessor decision is (infoset, action).
  const std::vector<int>& Children(int infoset, int action) const {
    return children_[base_[infoset] + action];
  }
  // Closest own predecessor as {infoset, action}, or {-1, -1}.
  std::pair<int, int> Parent(int infoset) const { return parent_[infoset]; }

  // Reduced plans; throws kGameTooLarge past `limit`.
  std::vector<Plan> Enumerate(
      std::size_t limit = std::numeric_limits<std::size_t>::max()) const;
  double Count() const;
  // Clears the actions of infosets the plan itself makes unreachable.
  Plan Reduce(const Plan& plan) const;
  // Whether `plan` plays every own action leading to `infoset`.
  bool Reaches(const Plan& plan, int infoset) const;

 private:
  int player_;
  std::vector<int> base_;
  std::vector<int> num_actions_;
  std::vector<std::pair<int, int>> parent_;
  std::vector<std::vector<int>> children_;
  std::vector<int> roots_;
};

std::vector<Plan> ReducedNormalFormPlans(const Information& info, int player);

// Per node: 1 if `plan` plays every `player` action on the path, else 0.
std::vector<double> PlanIndicator(const Game& game, const Information& info,
                                  int player, const Plan& plan);

// Team utility of a pure profile in expectation over chance. Throws
// kIncompleteProfile if a reached infoset has no action.
double ExpectedValuePure(const Game& game, const Information& info,
                         const JointPlan& joint);

// Behavioral strategy realizing a mixture of plans: probs[infoset][action].
std::vector<std::vector<double>> BehaviorFromMixture(
    const Information& info, int player, const std::vector<Plan>& plans,
    const std::vector<double>& weights);

struct MatrixSolution {
  std::vector<double> row;
  std::vector<double> col;
  double value = 0.0;
  // Best pure row payoff against `col` minus worst column payoff against
  // `row`.
  double gap = 0.0;
};

// Row player maximizes. Exact simplex pivoting with Bland's rule.
MatrixSolution SolveMatrixGame(const std::vector<std::vector<double>>& payoff);

struct TmecorOptions {
  double tol = 1e-9;
  // Bound on |joint team plans| x |opponent plans|.
  double max_entries = 1e10;
  // Bound on team plans enumerated explicitly per best response.
  double max_enumerated = 1e6;
  int max_iterations = 100000;
};

struct TmecorResult {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::vector<JointPlan> team_support;
  std::vector<double> team_probs;
  std::vector<Plan> opponent_support;
  std::vector<double> opponent_probs;
  double joint_team_plans = 0.0;
  double opponent_plans = 0.0;
  int iterations = 0;
};

// Max-min over distributions on joint reduced plans of the team against the
// opponent's reduced plans. Solved by double oracle on the implicit matrix
// with exact best responses, stopping once the certified gap is within tol.
// Coordinator players count as single-member teams, so converted games are
// accepted as well.
TmecorResult TmecorBruteForce(const Game& game,
                              const TmecorOptions& options = {});

}  // namespace pubteam

#endif  // PUBTEAM_NORMAL_FORM_H_
