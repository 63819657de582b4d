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
#include <cmath>
#include <random>

namespace pubteam {
namespace {

Plan TranslateByKey(const Information& from, int from_player,
                    const Information& to, int to_player, const Plan& plan) {
  Plan out(to.NumInfosets(to_player), 0);
  for (int j = 0; j < to.NumInfosets(to_player); ++j) {
    const int i = from.FindInfoset(from_player, to.Key(to_player, j));
    if (i < 0) {
      throw GameError(ErrorCode::kOriginMismatch,
                      "no counterpart for " + to.Key(to_player, j));
    }
    out[j] = std::max(plan[i], 0);
  }
  return out;
}

Plan RandomPlan(const Information& info, int player, std::mt19937_64& rng) {
  Plan out(info.NumInfosets(player));
  for (int i = 0; i < info.NumInfosets(player); ++i) {
    std::uniform_int_distribution<int> pick(0, info.NumActions(player, i) - 1);
    out[i] = pick(rng);
  }
  return out;
}

}  // namespace

Plan MapTeamToCoordinator(const ConvertedGame& cg,
                          const Information& source_info,
                          const Information& conv_info,
                          const JointPlan& team) {
  const int t = cg.coordinator();
  Plan out(conv_info.NumInfosets(t), -1);
  for (int n = 0; n < cg.game.num_nodes(); ++n) {
    const NodeOrigin& o = cg.origin[n];
    if (o.kind != OriginKind::kCoordinator) continue;
    const std::vector<int>& domain = cg.domains[o.domain];
    std::vector<int> actions(domain.size());
    for (std::size_t d = 0; d < domain.size(); ++d) {
      actions[d] = std::max(team[o.member][domain[d]], 0);
    }
    const int k = cg.PrescriptionIndex(source_info, n, actions);
    int& slot = out[conv_info.InfosetOf(n)];
    if (slot >= 0 && slot != k) {
      throw GameError(ErrorCode::kIllegalPrescription,
                      "merged coordinator infoset needs two prescriptions");
    }
    slot = k;
  }
  for (int& a : out) a = std::max(a, 0);
  return out;
}

JointPlan MapCoordinatorToTeam(const ConvertedGame& cg,
                               const Information& source_info,
                               const Information& conv_info,
                               const Plan& coordinator) {
  const Game& src = cg.source;
  JointPlan out(src.num_players());
  for (int p : src.PlayersWithRole(Role::kTeam)) {
    out[p].assign(source_info.NumInfosets(p), -1);
  }
  std::vector<int> stack = {cg.game.root};
  while (!stack.empty()) {
    const int n = stack.back();
    stack.pop_back();
    const NodeOrigin& o = cg.origin[n];
    auto edges = cg.game.Edges(n);
    if (o.kind == OriginKind::kCoordinator) {
      const int k = coordinator[conv_info.InfosetOf(n)];
      const std::vector<int> gamma = cg.Prescription(source_info, n, k);
      const std::vector<int>& domain = cg.domains[o.domain];
      for (std::size_t d = 0; d < domain.size(); ++d) {
        int& slot = out[o.member][domain[d]];
        if (slot < 0) slot = gamma[d];
      }
      stack.push_back(edges[k].child);
      continue;
    }
    for (auto it = edges.rbegin(); it != edges.rend(); ++it) {
      stack.push_back(it->child);
    }
  }
  for (Plan& plan : out) {
    for (int& a : plan) a = std::max(a, 0);
  }
  return out;
}

Plan MapOpponentToConverted(const ConvertedGame& cg,
                            const Information& source_info,
                            const Information& conv_info, const Plan& plan) {
  return TranslateByKey(source_info, cg.source.Opponent(), conv_info,
                        cg.opponent(), plan);
}

Plan MapOpponentToSource(const ConvertedGame& cg,
                         const Information& source_info,
                         const Information& conv_info, const Plan& plan) {
  const int src_opp = cg.source.Opponent();
  Plan out(source_info.NumInfosets(src_opp), 0);
  for (int j = 0; j < conv_info.NumInfosets(cg.opponent()); ++j) {
    const int i =
        source_info.FindInfoset(src_opp, conv_info.Key(cg.opponent(), j));
    if (i < 0) {
      throw GameError(ErrorCode::kOriginMismatch,
                      "no counterpart for " +
                          conv_info.Key(cg.opponent(), j));
    }
    out[i] = plan[j];
  }
  return out;
}

EquivalenceReport CheckPayoffEquivalence(const ConvertedGame& cg, int samples,
                                         std::uint64_t seed) {
  if (samples < 0) {
    throw GameError(ErrorCode::kInvalidArgument, "samples must be >= 0");
  }
  const Information source_info(cg.source);
  const Information conv_info(cg.game);
  const int src_opp = cg.source.Opponent();
  std::mt19937_64 rng(seed);
  EquivalenceReport report;
  report.samples = samples;
  for (int s = 0; s < samples; ++s) {
    JointPlan src(cg.source.num_players());
    for (int p = 0; p < cg.source.num_players(); ++p) {
      src[p] = RandomPlan(source_info, p, rng);
    }
    JointPlan conv(cg.game.num_players());
    conv[cg.coordinator()] =
        MapTeamToCoordinator(cg, source_info, conv_info, src);
    conv[cg.opponent()] =
        MapOpponentToConverted(cg, source_info, conv_info, src[src_opp]);
    const double a = ExpectedValuePure(cg.source, source_info, src);
    const double b = ExpectedValuePure(cg.game, conv_info, conv);
    report.max_abs_diff = std::max(report.max_abs_diff, std::fabs(a - b));
  }
  return report;
}

}  // namespace pubteam
