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

#include "pubteam/normal_form.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "pubteam/solvers.h"

namespace pubteam {
namespace {

constexpr double kPivotEps = 1e-12;

std::vector<double> ChanceReach(const Game& game) {
  std::vector<double> reach(game.num_nodes(), 0.0);
  reach[game.root] = 1.0;
  for (int n : game.PreOrder()) {
    const Node& nd = game.nodes[n];
    for (const Edge& e : game.Edges(n)) {
      reach[e.child] = nd.kind == NodeKind::kChance ? reach[n] * e.prob
                                                    : reach[n];
    }
  }
  return reach;
}

}  // namespace

PlanTree::PlanTree(const Information& info, int player) : player_(player) {
  const Game& game = info.game();
  const int num = info.NumInfosets(player);
  base_.resize(num);
  num_actions_.resize(num);
  int next = 0;
  for (int i = 0; i < num; ++i) {
    base_[i] = next;
    num_actions_[i] = info.NumActions(player, i);
    next += num_actions_[i];
  }
  children_.resize(next);
  parent_.assign(num, {-2, -2});
  // own[n] is the last own sequence (base + action) above n, or -1.
  std::vector<int> own(game.num_nodes(), -1);
  std::vector<std::pair<int, int>> seq_of(next);
  for (int i = 0; i < num; ++i) {
    for (int a = 0; a < info.NumActions(player, i); ++a) {
      seq_of[base_[i] + a] = {i, a};
    }
  }
  for (int n : game.PreOrder()) {
    const Node& nd = game.nodes[n];
    const bool mine = nd.kind == NodeKind::kDecision && nd.player == player;
    if (mine) {
      const int i = info.InfosetOf(n);
      const std::pair<int, int> p =
          own[n] < 0 ? std::make_pair(-1, -1) : seq_of[own[n]];
      if (parent_[i].first == -2) {
        parent_[i] = p;
      } else if (parent_[i] != p) {
        throw GameError(ErrorCode::kImperfectRecallInput,
                        "player forgets own actions at " +
                            info.Key(player, i));
      }
    }
    auto edges = game.Edges(n);
    for (int a = 0; a < static_cast<int>(edges.size()); ++a) {
      own[edges[a].child] = mine ? base_[info.InfosetOf(n)] + a : own[n];
    }
  }
  for (int i = 0; i < num; ++i) {
    if (parent_[i].first < 0) {
      parent_[i] = {-1, -1};
      roots_.push_back(i);
    } else {
      children_[base_[parent_[i].first] + parent_[i].second].push_back(i);
    }
  }
}

std::vector<Plan> PlanTree::Enumerate(std::size_t limit) const {
  std::vector<Plan> out;
  Plan plan(num_infosets(), -1);
  std::function<void(std::vector<int>)> expand =
      [&](std::vector<int> pending) {
        if (pending.empty()) {
          if (out.size() >= limit) {
            throw GameError(ErrorCode::kGameTooLarge,
                            "too many reduced plans");
          }
          out.push_back(plan);
          return;
        }
        const int i = pending.back();
        pending.pop_back();
        for (int a = 0; a < num_actions_[i]; ++a) {
          plan[i] = a;
          std::vector<int> next = pending;
          const auto& kids = Children(i, a);
          next.insert(next.end(), kids.rbegin(), kids.rend());
          expand(std::move(next));
        }
        plan[i] = -1;
      };
  std::vector<int> start(roots_.rbegin(), roots_.rend());
  expand(std::move(start));
  return out;
}

double PlanTree::Count() const {
  std::vector<double> memo(num_infosets(), -1.0);
  std::function<double(int)> count = [&](int i) {
    if (memo[i] >= 0.0) return memo[i];
    double total = 0.0;
    for (int a = 0; a < num_actions_[i]; ++a) {
      double prod = 1.0;
      for (int j : Children(i, a)) prod *= count(j);
      total += prod;
    }
    memo[i] = total;
    return total;
  };
  double out = 1.0;
  for (int i : roots_) out *= count(i);
  return out;
}

Plan PlanTree::Reduce(const Plan& plan) const {
  Plan out(num_infosets(), -1);
  std::vector<int> stack(roots_.begin(), roots_.end());
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    if (plan[i] < 0) {
      throw GameError(ErrorCode::kIncompleteProfile,
                      "plan leaves a reachable infoset open");
    }
    out[i] = plan[i];
    for (int j : Children(i, plan[i])) stack.push_back(j);
  }
  return out;
}

bool PlanTree::Reaches(const Plan& plan, int infoset) const {
  for (auto p = parent_[infoset]; p.first >= 0; p = parent_[p.first]) {
    if (plan[p.first] != p.second) return false;
  }
  return true;
}

std::vector<Plan> ReducedNormalFormPlans(const Information& info, int player) {
  return PlanTree(info, player).Enumerate();
}

std::vector<double> PlanIndicator(const Game& game, const Information& info,
                                  int player, const Plan& plan) {
  std::vector<double> ind(game.num_nodes(), 0.0);
  ind[game.root] = 1.0;
  for (int n : game.PreOrder()) {
    const Node& nd = game.nodes[n];
    const bool mine = nd.kind == NodeKind::kDecision && nd.player == player;
    const int chosen = mine ? plan[info.InfosetOf(n)] : -1;
    auto edges = game.Edges(n);
    for (int a = 0; a < static_cast<int>(edges.size()); ++a) {
      ind[edges[a].child] = (!mine || chosen == a) ? ind[n] : 0.0;
    }
  }
  return ind;
}

double ExpectedValuePure(const Game& game, const Information& info,
                         const JointPlan& joint) {
  std::vector<double> reach(game.num_nodes(), 0.0);
  reach[game.root] = 1.0;
  double total = 0.0;
  for (int n : game.PreOrder()) {
    const Node& nd = game.nodes[n];
    auto edges = game.Edges(n);
    if (nd.kind == NodeKind::kTerminal) {
      total += reach[n] * nd.utility;
    } else if (nd.kind == NodeKind::kChance) {
      for (const Edge& e : edges) reach[e.child] = reach[n] * e.prob;
    } else {
      const int i = info.InfosetOf(n);
      const Plan& plan = joint[nd.player];
      const int chosen =
          i < static_cast<int>(plan.size()) ? plan[i] : -1;
      if (chosen < 0 && reach[n] > 0.0) {
        throw GameError(ErrorCode::kIncompleteProfile,
                        "no action at " + info.Key(nd.player, i));
      }
      for (int a = 0; a < static_cast<int>(edges.size()); ++a) {
        reach[edges[a].child] = a == chosen ? reach[n] : 0.0;
      }
    }
  }
  return total;
}

std::vector<std::vector<double>> BehaviorFromMixture(
    const Information& info, int player, const std::vector<Plan>& plans,
    const std::vector<double>& weights) {
  PlanTree tree(info, player);
  const int num = info.NumInfosets(player);
  std::vector<std::vector<double>> out(num);
  for (int i = 0; i < num; ++i) {
    const int k = info.NumActions(player, i);
    std::vector<double> mass(k, 0.0);
    double total = 0.0;
    for (std::size_t s = 0; s < plans.size(); ++s) {
      const int a = plans[s][i];
      if (a < 0 || !tree.Reaches(plans[s], i)) continue;
      mass[a] += weights[s];
      total += weights[s];
    }
    out[i].assign(k, 1.0 / k);
    if (total > 0.0) {
      for (int a = 0; a < k; ++a) out[i][a] = mass[a] / total;
    }
  }
  return out;
}

MatrixSolution SolveMatrixGame(
    const std::vector<std::vector<double>>& payoff) {
  const int m = static_cast<int>(payoff.size());
  if (m == 0 || payoff[0].empty()) {
    throw GameError(ErrorCode::kEmptyMatrix, "empty payoff matrix");
  }
  const int n = static_cast<int>(payoff[0].size());
  double lo = payoff[0][0];
  for (const auto& row : payoff) {
    if (static_cast<int>(row.size()) != n) {
      throw GameError(ErrorCode::kInvalidArgument, "ragged payoff matrix");
    }
    for (double v : row) {
      if (!std::isfinite(v)) {
        throw GameError(ErrorCode::kInvalidArgument, "non-finite payoff");
      }
      lo = std::min(lo, v);
    }
  }
  const double shift = 1.0 - lo;
  // Column LP: max sum z s.t. (U + shift) z <= 1, z >= 0.
  const int width = n + m + 1;
  std::vector<std::vector<double>> t(m + 1, std::vector<double>(width, 0.0));
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = payoff[i][j] + shift;
    t[i][n + i] = 1.0;
    t[i][width - 1] = 1.0;
    basis[i] = n + i;
  }
  for (int j = 0; j < n; ++j) t[m][j] = -1.0;
  while (true) {
    int enter = -1;
    for (int j = 0; j < n + m; ++j) {
      if (t[m][j] < -kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double best = 0.0;
    for (int i = 0; i < m; ++i) {
      if (t[i][enter] <= kPivotEps) continue;
      const double ratio = t[i][width - 1] / t[i][enter];
      if (leave < 0 || ratio < best - kPivotEps ||
          (ratio <= best + kPivotEps && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    // The feasible region is bounded since every entry is positive.
    const double piv = t[leave][enter];
    for (double& v : t[leave]) v /= piv;
    for (int i = 0; i <= m; ++i) {
      if (i == leave || t[i][enter] == 0.0) continue;
      const double f = t[i][enter];
      for (int j = 0; j < width; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  MatrixSolution out;
  out.col.assign(n, 0.0);
  out.row.assign(m, 0.0);
  double zsum = 0.0;
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) {
      out.col[basis[i]] = std::max(t[i][width - 1], 0.0);
      zsum += out.col[basis[i]];
    }
  }
  double ysum = 0.0;
  for (int i = 0; i < m; ++i) {
    out.row[i] = std::max(t[m][n + i], 0.0);
    ysum += out.row[i];
  }
  for (double& v : out.col) v /= zsum;
  for (double& v : out.row) v /= ysum;
  out.value = 1.0 / zsum - shift;
  double row_best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    double v = 0.0;
    for (int j = 0; j < n; ++j) v += payoff[i][j] * out.col[j];
    row_best = std::max(row_best, v);
  }
  double col_best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    double v = 0.0;
    for (int i = 0; i < m; ++i) v += payoff[i][j] * out.row[i];
    col_best = std::min(col_best, v);
  }
  out.gap = row_best - col_best;
  return out;
}

TmecorResult TmecorBruteForce(const Game& game, const TmecorOptions& options) {
  // A coordinator is a team of one.
  std::vector<int> team = game.PlayersWithRole(Role::kTeam);
  for (int p : game.PlayersWithRole(Role::kCoordinator)) team.push_back(p);
  std::sort(team.begin(), team.end());
  const int opp = game.Opponent();
  if (team.empty() || opp < 0) {
    throw GameError(ErrorCode::kNotATeamGame,
                    "oracle needs team members and one opponent");
  }
  const Information info(game);
  std::vector<PlanTree> trees;
  for (int p : team) trees.emplace_back(info, p);
  const PlanTree opp_tree(info, opp);

  TmecorResult out;
  out.joint_team_plans = 1.0;
  int br_slot = 0;
  for (std::size_t s = 0; s < trees.size(); ++s) {
    const double c = trees[s].Count();
    out.joint_team_plans *= c;
    if (c > trees[br_slot].Count()) br_slot = static_cast<int>(s);
  }
  out.opponent_plans = opp_tree.Count();
  if (out.joint_team_plans * out.opponent_plans > options.max_entries) {
    throw GameError(ErrorCode::kGameTooLarge,
                    "joint plans x opponent plans exceeds the guard");
  }
  const double enumerated =
      out.joint_team_plans / trees[br_slot].Count();
  if (enumerated > options.max_enumerated) {
    throw GameError(ErrorCode::kGameTooLarge,
                    "too many team plans to enumerate");
  }

  const int num_nodes = game.num_nodes();
  const std::vector<double> chance = ChanceReach(game);
  std::vector<int> terminals;
  for (int n = 0; n < num_nodes; ++n) {
    if (game.IsTerminal(n)) terminals.push_back(n);
  }

  // Explicit plans of every member except the best-responding one.
  std::vector<std::vector<Plan>> member_plans(trees.size());
  std::vector<std::vector<std::vector<double>>> member_ind(trees.size());
  for (std::size_t s = 0; s < trees.size(); ++s) {
    if (static_cast<int>(s) == br_slot) continue;
    member_plans[s] = trees[s].Enumerate();
    for (const Plan& pl : member_plans[s]) {
      member_ind[s].push_back(PlanIndicator(game, info, team[s], pl));
    }
  }

  std::vector<JointPlan> team_set;
  std::vector<std::vector<double>> team_ind;
  std::vector<Plan> opp_set;
  std::vector<std::vector<double>> opp_ind;
  std::vector<std::vector<double>> matrix;

  auto team_indicator = [&](const JointPlan& jp) {
    std::vector<double> ind(num_nodes, 1.0);
    for (std::size_t s = 0; s < trees.size(); ++s) {
      const std::vector<double> m = PlanIndicator(game, info, team[s], jp[team[s]]);
      for (int n = 0; n < num_nodes; ++n) ind[n] *= m[n];
    }
    return ind;
  };
  auto entry = [&](const std::vector<double>& ti,
                   const std::vector<double>& oi) {
    double v = 0.0;
    for (int z : terminals) {
      v += chance[z] * ti[z] * oi[z] * game.nodes[z].utility;
    }
    return v;
  };
  auto add_team = [&](const JointPlan& jp) {
    if (std::find(team_set.begin(), team_set.end(), jp) != team_set.end()) {
      return false;
    }
    team_set.push_back(jp);
    team_ind.push_back(team_indicator(jp));
    std::vector<double> row;
    for (const auto& oi : opp_ind) row.push_back(entry(team_ind.back(), oi));
    matrix.push_back(std::move(row));
    return true;
  };
  auto add_opp = [&](const Plan& pl) {
    if (std::find(opp_set.begin(), opp_set.end(), pl) != opp_set.end()) {
      return false;
    }
    opp_set.push_back(pl);
    opp_ind.push_back(PlanIndicator(game, info, opp, pl));
    for (std::size_t r = 0; r < team_set.size(); ++r) {
      matrix[r].push_back(entry(team_ind[r], opp_ind.back()));
    }
    return true;
  };
  auto opp_best = [&](const std::vector<double>& team_reach) {
    std::vector<double> reach(num_nodes);
    for (int n = 0; n < num_nodes; ++n) reach[n] = chance[n] * team_reach[n];
    BestResponseResult br = BestResponseFromReach(game, info, opp, reach);
    return std::make_pair(-br.value, opp_tree.Reduce(br.action));
  };
  auto team_best = [&](const std::vector<double>& opp_reach) {
    double best = -std::numeric_limits<double>::infinity();
    JointPlan best_plan(game.num_players());
    std::vector<int> digit(trees.size(), 0);
    std::vector<double> reach(num_nodes);
    while (true) {
      for (int n = 0; n < num_nodes; ++n) {
        double r = chance[n] * opp_reach[n];
        for (std::size_t s = 0; s < trees.size(); ++s) {
          if (static_cast<int>(s) != br_slot) r *= member_ind[s][digit[s]][n];
        }
        reach[n] = r;
      }
      BestResponseResult br =
          BestResponseFromReach(game, info, team[br_slot], reach);
      if (br.value > best) {
        best = br.value;
        for (std::size_t s = 0; s < trees.size(); ++s) {
          best_plan[team[s]] = static_cast<int>(s) == br_slot
                                   ? trees[s].Reduce(br.action)
                                   : member_plans[s][digit[s]];
        }
      }
      std::size_t s = 0;
      for (; s < trees.size(); ++s) {
        if (static_cast<int>(s) == br_slot) continue;
        if (++digit[s] < static_cast<int>(member_plans[s].size())) break;
        digit[s] = 0;
      }
      if (s == trees.size()) break;
    }
    return std::make_pair(best, best_plan);
  };

  {
    JointPlan first(game.num_players());
    for (std::size_t s = 0; s < trees.size(); ++s) {
      first[team[s]] = trees[s].Reduce(Plan(trees[s].num_infosets(), 0));
    }
    add_team(first);
    add_opp(opp_best(team_ind.front()).second);
  }

  MatrixSolution sol;
  for (out.iterations = 1; out.iterations <= options.max_iterations;
       ++out.iterations) {
    sol = SolveMatrixGame(matrix);
    std::vector<double> team_reach(num_nodes, 0.0);
    for (std::size_t r = 0; r < team_set.size(); ++r) {
      if (sol.row[r] <= 0.0) continue;
      for (int n = 0; n < num_nodes; ++n) {
        team_reach[n] += sol.row[r] * team_ind[r][n];
      }
    }
    std::vector<double> opp_reach(num_nodes, 0.0);
    for (std::size_t c = 0; c < opp_set.size(); ++c) {
      if (sol.col[c] <= 0.0) continue;
      for (int n = 0; n < num_nodes; ++n) {
        opp_reach[n] += sol.col[c] * opp_ind[c][n];
      }
    }
    auto [upper, team_plan] = team_best(opp_reach);
    auto [lower, opp_plan] = opp_best(team_reach);
    out.upper = upper;
    out.lower = lower;
    if (upper - lower <= options.tol) break;
    const bool grew_team = add_team(team_plan);
    const bool grew_opp = add_opp(opp_plan);
    if (!grew_team && !grew_opp) break;
  }
  out.iterations = std::min(out.iterations, options.max_iterations);
  out.value = sol.value;
  for (std::size_t r = 0; r < team_set.size(); ++r) {
    if (sol.row[r] > 0.0) {
      out.team_support.push_back(team_set[r]);
      out.team_probs.push_back(sol.row[r]);
    }
  }
  for (std::size_t c = 0; c < opp_set.size(); ++c) {
    if (sol.col[c] > 0.0) {
      out.opponent_support.push_back(opp_set[c]);
      out.opponent_probs.push_back(sol.col[c]);
    }
  }
  return out;
}

}  // namespace pubteam
