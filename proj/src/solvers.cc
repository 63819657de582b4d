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

#include "pubteam/solvers.h"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <memory>

namespace pubteam {
namespace {

double UtilitySign(const Game& game, int player) {
  return game.players[player].role == Role::kOpponent ? -1.0 : 1.0;
}

class BestResponder {
 public:
  BestResponder(const Game& game, const Information& info, int responder,
                const std::vector<double>& reach)
      : game_(game),
        info_(info),
        responder_(responder),
        reach_(reach),
        sign_(UtilitySign(game, responder)),
        value_(game.num_nodes(), 0.0),
        done_(game.num_nodes(), 0),
        choice_(info.NumInfosets(responder), -1) {}

  BestResponseResult Run() {
    BestResponseResult out;
    out.value = Value(game_.root);
    out.action = choice_;
    return out;
  }

 private:
  double Value(int n) {
    if (done_[n]) return value_[n];
    const Node& nd = game_.nodes[n];
    double v = 0.0;
    if (nd.kind == NodeKind::kTerminal) {
      v = reach_[n] * sign_ * nd.utility;
    } else if (nd.kind == NodeKind::kDecision && nd.player == responder_) {
      const int infoset = info_.InfosetOf(n);
      Choose(infoset);
      v = Value(game_.Edges(n)[choice_[infoset]].child);
    } else {
      for (const Edge& e : game_.Edges(n)) v += Value(e.child);
    }
    done_[n] = 1;
    value_[n] = v;
    return v;
  }

  void Choose(int infoset) {
    if (choice_[infoset] >= 0) return;
    const int num_actions = info_.NumActions(responder_, infoset);
    std::vector<double> total(num_actions, 0.0);
    for (int h : info_.Members(responder_, infoset)) {
      auto edges = game_.Edges(h);
      for (int a = 0; a < num_actions; ++a) total[a] += Value(edges[a].child);
    }
    int best = 0;
    for (int a = 1; a < num_actions; ++a) {
      if (total[a] > total[best]) best = a;
    }
    choice_[infoset] = best;
  }

  const Game& game_;
  const Information& info_;
  int responder_;
  const std::vector<double>& reach_;
  double sign_;
  std::vector<double> value_;
  std::vector<char> done_;
  std::vector<int> choice_;
};

class CfrSolver {
 public:
  CfrSolver(const Game& game, CfrAlgorithm algo)
      : game_(game), info_(game), algo_(algo) {
    base_.resize(game.num_players());
    int next = 0;
    for (int p = 0; p < game.num_players(); ++p) {
      for (int i = 0; i < info_.NumInfosets(p); ++i) {
        base_[p].push_back(next);
        next += info_.NumActions(p, i);
      }
    }
    slot_.assign(game.num_nodes(), -1);
    for (int n = 0; n < game.num_nodes(); ++n) {
      if (game.IsDecision(n)) {
        slot_[n] = base_[game.nodes[n].player][info_.InfosetOf(n)];
      }
    }
    regret_.assign(next, 0.0);
    strategy_sum_.assign(next, 0.0);
    current_.assign(next, 0.0);
  }

  const Information& info() const { return info_; }

  void Iterate(std::int64_t t) {
    weight_ = algo_ == CfrAlgorithm::kLinearCfrPlus ? static_cast<double>(t)
                                                     : 1.0;
    if (algo_ == CfrAlgorithm::kCfr) {
      UpdateCurrent();
      for (int p = 0; p < game_.num_players(); ++p) {
        Traverse(game_.root, p, 1.0, 1.0);
      }
      return;
    }
    for (int p = 0; p < game_.num_players(); ++p) {
      UpdateCurrent();
      Traverse(game_.root, p, 1.0, 1.0);
      FloorRegrets(p);
    }
  }

  Profile Average() const {
    Profile out;
    out.probs.resize(game_.num_players());
    for (int p = 0; p < game_.num_players(); ++p) {
      for (int i = 0; i < info_.NumInfosets(p); ++i) {
        const int k = info_.NumActions(p, i);
        const int b = base_[p][i];
        double total = 0.0;
        for (int a = 0; a < k; ++a) total += strategy_sum_[b + a];
        std::vector<double> row(k, 1.0 / k);
        if (total > 0.0) {
          for (int a = 0; a < k; ++a) row[a] = strategy_sum_[b + a] / total;
        }
        out.probs[p].push_back(std::move(row));
      }
    }
    return out;
  }

  double MinRegret() const {
    double m = 0.0;
    for (double r : regret_) m = std::min(m, r);
    return m;
  }

 private:
  void UpdateCurrent() {
    for (int p = 0; p < game_.num_players(); ++p) {
      for (int i = 0; i < info_.NumInfosets(p); ++i) {
        const int k = info_.NumActions(p, i);
        const int b = base_[p][i];
        double total = 0.0;
        for (int a = 0; a < k; ++a) total += std::max(regret_[b + a], 0.0);
        for (int a = 0; a < k; ++a) {
          current_[b + a] =
              total > 0.0 ? std::max(regret_[b + a], 0.0) / total : 1.0 / k;
        }
      }
    }
  }

  void FloorRegrets(int p) {
    for (int i = 0; i < info_.NumInfosets(p); ++i) {
      const int b = base_[p][i];
      for (int a = 0; a < info_.NumActions(p, i); ++a) {
        regret_[b + a] = std::max(regret_[b + a], 0.0);
      }
    }
  }

  // Returns the team utility of the subtree under the current strategies.
  double Traverse(int n, int p, double reach_p, double reach_others) {
    const Node& nd = game_.nodes[n];
    if (nd.kind == NodeKind::kTerminal) return nd.utility;
    auto edges = game_.Edges(n);
    if (nd.kind == NodeKind::kChance) {
      double v = 0.0;
      for (const Edge& e : edges) {
        if (e.prob > 0.0) {
          v += e.prob * Traverse(e.child, p, reach_p, reach_others * e.prob);
        }
      }
      return v;
    }
    // Subtrees reached with zero weight by everybody only enter expectations
    // multiplied by zero. Subtrees the others never reach are still visited
    // while reach_p > 0 so the average strategy stays reach-weighted.
    if (reach_p <= 0.0 && reach_others <= 0.0) return 0.0;
    const int b = slot_[n];
    const int k = static_cast<int>(edges.size());
    if (nd.player != p) {
      double v = 0.0;
      for (int a = 0; a < k; ++a) {
        const double s = current_[b + a];
        const double child = Traverse(edges[a].child, p, reach_p,
                                      reach_others * s);
        v += s * child;
      }
      return v;
    }
    const double sign = UtilitySign(game_, p);
    double child_value[kMaxActionsOnStack];
    std::unique_ptr<double[]> heap;
    double* values = child_value;
    if (k > kMaxActionsOnStack) {
      heap = std::make_unique<double[]>(k);
      values = heap.get();
    }
    double v = 0.0;
    for (int a = 0; a < k; ++a) {
      const double s = current_[b + a];
      values[a] = Traverse(edges[a].child, p, reach_p * s, reach_others);
      v += s * values[a];
    }
    for (int a = 0; a < k; ++a) {
      regret_[b + a] += reach_others * sign * (values[a] - v);
      strategy_sum_[b + a] += weight_ * reach_p * current_[b + a];
    }
    return v;
  }

  static constexpr int kMaxActionsOnStack = 64;

  const Game& game_;
  Information info_;
  CfrAlgorithm algo_;
  std::vector<std::vector<int>> base_;
  std::vector<int> slot_;
  std::vector<double> regret_;
  std::vector<double> strategy_sum_;
  std::vector<double> current_;
  double weight_ = 1.0;
};

}  // namespace

Profile UniformProfile(const Information& info) {
  const Game& game = info.game();
  Profile out;
  out.probs.resize(game.num_players());
  for (int p = 0; p < game.num_players(); ++p) {
    for (int i = 0; i < info.NumInfosets(p); ++i) {
      const int k = info.NumActions(p, i);
      out.probs[p].emplace_back(k, 1.0 / k);
    }
  }
  return out;
}

std::vector<double> EdgeProbabilities(const Game& game,
                                      const Information& info,
                                      const Profile& profile) {
  std::vector<double> out(game.edges.size(), 0.0);
  for (int n = 0; n < game.num_nodes(); ++n) {
    const Node& nd = game.nodes[n];
    if (nd.kind == NodeKind::kChance) {
      for (int a = 0; a < nd.num_edges; ++a) {
        out[nd.first_edge + a] = game.edges[nd.first_edge + a].prob;
      }
    } else if (nd.kind == NodeKind::kDecision) {
      const int p = nd.player;
      const int i = info.InfosetOf(n);
      if (p >= static_cast<int>(profile.probs.size()) ||
          i >= static_cast<int>(profile.probs[p].size()) ||
          static_cast<int>(profile.probs[p][i].size()) != nd.num_edges) {
        throw GameError(ErrorCode::kIncompleteProfile,
                        "no strategy for " + info.Key(p, i));
      }
      for (int a = 0; a < nd.num_edges; ++a) {
        out[nd.first_edge + a] = profile.probs[p][i][a];
      }
    }
  }
  return out;
}

double ExpectedValue(const Game& game, const std::vector<double>& edge_probs) {
  std::vector<double> reach(game.num_nodes(), 0.0);
  reach[game.root] = 1.0;
  double total = 0.0;
  for (int n : game.PreOrder()) {
    const Node& nd = game.nodes[n];
    if (nd.kind == NodeKind::kTerminal) {
      total += reach[n] * nd.utility;
      continue;
    }
    for (int a = 0; a < nd.num_edges; ++a) {
      const int e = nd.first_edge + a;
      reach[game.edges[e].child] = reach[n] * edge_probs[e];
    }
  }
  return total;
}

double ExpectedValue(const Game& game, const Information& info,
                     const Profile& profile) {
  return ExpectedValue(game, EdgeProbabilities(game, info, profile));
}

std::vector<double> ReachExcluding(const Game& game,
                                   const std::vector<double>& edge_probs,
                                   int excluded) {
  std::vector<double> reach(game.num_nodes(), 0.0);
  reach[game.root] = 1.0;
  for (int n : game.PreOrder()) {
    const Node& nd = game.nodes[n];
    const bool own =
        nd.kind == NodeKind::kDecision && nd.player == excluded;
    for (int a = 0; a < nd.num_edges; ++a) {
      const int e = nd.first_edge + a;
      reach[game.edges[e].child] = own ? reach[n] : reach[n] * edge_probs[e];
    }
  }
  return reach;
}

BestResponseResult BestResponseFromReach(
    const Game& game, const Information& info, int responder,
    const std::vector<double>& others_reach) {
  if (static_cast<int>(others_reach.size()) != game.num_nodes()) {
    throw GameError(ErrorCode::kIncompleteProfile, "reach size mismatch");
  }
  return BestResponder(game, info, responder, others_reach).Run();
}

BestResponseResult BestResponse(const Game& game, const Information& info,
                                int responder,
                                const std::vector<double>& edge_probs) {
  return BestResponseFromReach(game, info, responder,
                               ReachExcluding(game, edge_probs, responder));
}

int CheckTwoPlayerZeroSum(const Game& game) {
  if (game.num_players() != 2) {
    throw GameError(ErrorCode::kNotTwoPlayerZeroSum,
                    "expected 2 players, found " +
                        std::to_string(game.num_players()));
  }
  const int opp = game.Opponent();
  if (opp < 0) {
    throw GameError(ErrorCode::kNotTwoPlayerZeroSum, "no opponent player");
  }
  return 1 - opp;
}

ExploitabilityReport Exploitability(const Game& game, const Information& info,
                                    const Profile& profile) {
  const int team = CheckTwoPlayerZeroSum(game);
  const int opp = 1 - team;
  const std::vector<double> probs = EdgeProbabilities(game, info, profile);
  bool overridden = false;
  for (int v : game.infoset_override) overridden |= v >= 0;
  std::unique_ptr<Information> full;
  if (overridden) full = std::make_unique<Information>(game, false);
  const Information& br_info = overridden ? *full : info;
  ExploitabilityReport r;
  r.team_value = ExpectedValue(game, probs);
  r.team_best_response = BestResponse(game, br_info, team, probs).value;
  r.opponent_best_response = BestResponse(game, br_info, opp, probs).value;
  r.exploitability = r.team_best_response + r.opponent_best_response;
  return r;
}

const char* CfrAlgorithmName(CfrAlgorithm algo) {
  switch (algo) {
    case CfrAlgorithm::kCfr:
      return "cfr";
    case CfrAlgorithm::kCfrPlus:
      return "cfr+";
    case CfrAlgorithm::kLinearCfrPlus:
      return "lcfr+";
  }
  return "?";
}

CfrAlgorithm ParseCfrAlgorithm(const std::string& name) {
  if (name == "cfr") return CfrAlgorithm::kCfr;
  if (name == "cfr+") return CfrAlgorithm::kCfrPlus;
  if (name == "lcfr+") return CfrAlgorithm::kLinearCfrPlus;
  throw GameError(ErrorCode::kInvalidArgument, "unknown algorithm " + name);
}

CfrResult SolveCfr(const Game& game, CfrAlgorithm algo,
                   std::int64_t iterations, std::int64_t log_every) {
  if (iterations < 0) {
    throw GameError(ErrorCode::kInvalidArgument, "iterations must be >= 0");
  }
  if (log_every < 1) {
    throw GameError(ErrorCode::kInvalidArgument, "log_every must be >= 1");
  }
  CheckTwoPlayerZeroSum(game);
  CfrSolver solver(game, algo);
  CfrResult out;
  for (std::int64_t t = 1; t <= iterations; ++t) {
    solver.Iterate(t);
    if (t % log_every == 0) {
      const Profile avg = solver.Average();
      const ExploitabilityReport r = Exploitability(game, solver.info(), avg);
      out.log.push_back({t, r.team_value, r.exploitability});
    }
  }
  out.average = solver.Average();
  out.min_regret = solver.MinRegret();
  return out;
}

std::string ConvergenceCsv(const std::vector<ConvergenceRow>& log) {
  std::string out = "iteration,team_value,exploitability\n";
  char buf[96];
  for (const ConvergenceRow& r : log) {
    std::snprintf(buf, sizeof(buf), "%lld,%.12g,%.12g\n",
                  static_cast<long long>(r.iteration), r.team_value,
                  r.exploitability);
    out += buf;
  }
  return out;
}

nlohmann::json ProfileToJson(const Game& game, const Information& info,
                             const Profile& profile) {
  nlohmann::json out = nlohmann::json::object();
  for (int p = 0; p < game.num_players(); ++p) {
    for (int i = 0; i < info.NumInfosets(p); ++i) {
      const int h = info.Members(p, i).front();
      auto edges = game.Edges(h);
      nlohmann::json row = nlohmann::json::object();
      for (std::size_t a = 0; a < edges.size(); ++a) {
        row[game.EdgeLabel(edges[a])] = profile.probs[p][i][a];
      }
      out[info.Key(p, i)] = std::move(row);
    }
  }
  return out;
}

}  // namespace pubteam
