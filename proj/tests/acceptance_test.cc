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

// Prints one PASS/FAIL line per acceptance criterion and exits nonzero if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "pubteam/census.h"
#include "pubteam/conversion.h"
#include "pubteam/generators.h"
#include "pubteam/info.h"
#include "pubteam/mapping.h"
#include "pubteam/normal_form.h"
#include "pubteam/solvers.h"
#include "test_util.h"

namespace pubteam {
namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

// Published size tables, three chance outcomes and two actions. Columns are
// normal, basic, pruned and folded.
const char* const kOnlyP1[14][4] = {
    {"8.00E+00", "3.00E+00", "3.00E+00", "9.00E+00"},
    {"6.40E+01", "2.70E+01", "2.70E+01", "7.50E+01"},
    {"5.12E+02", "2.19E+02", "1.35E+02", "3.75E+02"},
    {"4.10E+03", "1.76E+03", "5.19E+02", "1.46E+03"},
    {"3.28E+04", "1.40E+04", "1.72E+03", "4.86E+03"},
    {"2.62E+05", "1.12E+05", "5.18E+03", "1.48E+04"},
    {"2.10E+06", "8.99E+05", "1.46E+04", "4.18E+04"},
    {"1.68E+07", "7.19E+06", "3.92E+04", "1.13E+05"},
    {"1.34E+08", "5.75E+07", "1.01E+05", "2.93E+05"},
    {"1.07E+09", "4.60E+08", "2.55E+05", "7.40E+05"},
    {"8.59E+09", "3.68E+09", "6.27E+05", "1.82E+06"},
    {"6.87E+10", "2.95E+10", "1.51E+06", "4.41E+06"},
    {"5.50E+11", "2.36E+11", "3.59E+06", "1.05E+07"},
    {"4.40E+12", "1.88E+12", "8.40E+06", "2.46E+07"},
};
const char* const kBoth[14][4] = {
    {"8.00E+00", "9.00E+00", "9.00E+00", "9.00E+00"},
    {"6.40E+01", "8.10E+01", "8.10E+01", "7.50E+01"},
    {"5.12E+02", "6.57E+02", "4.05E+02", "3.75E+02"},
    {"4.10E+03", "5.26E+03", "1.56E+03", "1.46E+03"},
    {"3.28E+04", "4.21E+04", "5.16E+03", "4.86E+03"},
    {"2.62E+05", "3.37E+05", "1.55E+04", "1.48E+04"},
    {"2.10E+06", "2.70E+06", "4.37E+04", "4.18E+04"},
    {"1.68E+07", "2.16E+07", "1.17E+05", "1.13E+05"},
    {"1.34E+08", "1.73E+08", "3.04E+05", "2.93E+05"},
    {"1.07E+09", "1.38E+09", "7.65E+05", "7.40E+05"},
    {"8.59E+09", "1.10E+10", "1.88E+06", "1.82E+06"},
    {"6.87E+10", "8.84E+10", "4.53E+06", "4.41E+06"},
    {"5.50E+11", "7.07E+11", "1.08E+07", "1.05E+07"},
    {"4.40E+12", "5.65E+12", "2.52E+07", "2.46E+07"},
};

std::string Num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

Outcome ClosedFormTables() {
  int bad = 0;
  for (int h = 1; h <= 14; ++h) {
    for (bool both : {false, true}) {
      const auto& row = both ? kBoth[h - 1] : kOnlyP1[h - 1];
      const std::string got[4] = {Scientific(CountNormalPlans(3, 2, h)),
                                  Scientific(CountBasic(3, 2, h, both)),
                                  Scientific(CountPruned(3, 2, h, both)),
                                  Scientific(CountFolded(3, 2, h))};
      for (int c = 0; c < 4; ++c) bad += got[c] != row[c];
    }
  }
  return {bad == 0, std::to_string(112 - bad) + "/112 cells"};
}

Outcome FormulaVsConstruction() {
  int checked = 0, bad = 0;
  for (int chance : {2, 3}) {
    for (int actions : {2, 3}) {
      for (int depth = 1; depth <= 4; ++depth) {
        for (bool both : {false, true}) {
          const BigInt basic = CountBasic(chance, actions, depth, both);
          if (basic * boost::multiprecision::pow(BigInt(actions), chance) >
              200000) {
            continue;
          }
          ToySpec s;
          s.chance_outcomes = chance;
          s.actions = actions;
          s.depth = depth;
          s.both_private = both;
          const Game g = GenerateToy(s);
          const NodeCensus b = Census(ConvertBasic(g));
          const NodeCensus p = Census(ConvertPruned(g));
          const NodeCensus f = Census(ConvertFolded(g));
          bad += BigInt(b.coordinator_nodes_by_member.at("p1")) != basic;
          bad += BigInt(p.coordinator_nodes_by_member.at("p1")) !=
                 CountPruned(chance, actions, depth, both);
          bad += BigInt(f.coordinator_nodes_by_member.at("p1") +
                        f.prescription_chance_by_member.at("p1")) !=
                 CountFolded(chance, actions, depth);
          ++checked;
        }
      }
    }
  }
  return {bad == 0 && checked > 0,
          std::to_string(checked) + " instances, " + std::to_string(bad) +
              " mismatches"};
}

Outcome KuhnCensus() {
  const std::int64_t totals[3] = {2890, 3772, 5776};
  const std::int64_t infosets[3] = {86, 113, 155};
  bool ok = true;
  std::string detail;
  for (int adv = 0; adv < 3; ++adv) {
    PokerSpec s;
    s.adversary_position = adv;
    const NodeCensus c =
        Census(ApplySafeImperfectRecall(ConvertFolded(GenerateKuhn3(s))));
    ok = ok && c.total_nodes == totals[adv] &&
         c.coordinator_infosets == infosets[adv];
    detail += std::to_string(c.total_nodes) + "/" +
              std::to_string(c.coordinator_infosets) + " ";
  }
  return {ok, detail + "(folded, safe-IR)"};
}

Outcome KuhnOracleVsCfr() {
  bool ok = true;
  std::string detail;
  for (int adv = 0; adv < 3; ++adv) {
    PokerSpec s;
    s.adversary_position = adv;
    const Game g = GenerateKuhn3(s);
    const double oracle = TmecorBruteForce(g).value;
    const CfrResult r = SolveCfr(ConvertFolded(g).game,
                                 CfrAlgorithm::kLinearCfrPlus, 10000, 10000);
    const double diff = std::fabs(r.log.back().team_value - oracle);
    ok = ok && diff <= 1e-3;
    detail += "adv" + std::to_string(adv) + " |diff|=" + Num(diff) + " ";
  }
  return {ok, detail};
}

Outcome Convergence() {
  const ConvertedGame cg = ConvertFolded(GenerateKuhn3(PokerSpec{}));
  const CfrResult r =
      SolveCfr(cg.game, CfrAlgorithm::kLinearCfrPlus, 10000, 100);
  const double first = r.log.front().exploitability;
  const double last = r.log.back().exploitability;
  return {last <= 1e-2 && last < first,
          "expl@100=" + Num(first) + " expl@10000=" + Num(last)};
}

Outcome PayoffEquivalence() {
  double worst = 0.0;
  std::vector<Game> games;
  for (int chance : {2, 3}) {
    for (int actions : {2, 3}) {
      for (int depth : {1, 2}) {
        ToySpec s;
        s.chance_outcomes = chance;
        s.actions = actions;
        s.depth = depth;
        s.with_opponent = true;
        s.payoff_seed = 100 + chance * 10 + actions + depth;
        Game g = GenerateToy(s);
        if (g.num_nodes() <= 10000) games.push_back(std::move(g));
      }
    }
  }
  for (int adv = 0; adv < 3; ++adv) {
    PokerSpec s;
    s.adversary_position = adv;
    games.push_back(GenerateKuhn3(s));
  }
  for (const Game& g : games) {
    for (ConversionMode m : {ConversionMode::kBasic, ConversionMode::kPruned,
                             ConversionMode::kFolded}) {
      if (g.name != "toy" && m == ConversionMode::kBasic) continue;
      worst = std::max(
          worst, CheckPayoffEquivalence(Convert(g, m), 1000, 42).max_abs_diff);
    }
  }
  // Round trip on every joint plan of the small toys.
  int mismatches = 0;
  for (int depth : {1, 2}) {
    ToySpec s;
    s.chance_outcomes = 2;
    s.depth = depth;
    s.with_opponent = true;
    s.payoff_seed = 1;
    for (ConversionMode m : {ConversionMode::kBasic, ConversionMode::kPruned,
                             ConversionMode::kFolded}) {
      const ConvertedGame cg = Convert(GenerateToy(s), m);
      const Information src(cg.source);
      const Information conv(cg.game);
      for (const Plan& a : ReducedNormalFormPlans(src, 0)) {
        for (const Plan& b : ReducedNormalFormPlans(src, 1)) {
          JointPlan team = {a, b, {}};
          for (Plan& p : team) {
            for (int& x : p) x = std::max(x, 0);
          }
          const JointPlan back = MapCoordinatorToTeam(
              cg, src, conv, MapTeamToCoordinator(cg, src, conv, team));
          // Reached team infosets: follow the plan, branch elsewhere.
          std::vector<int> stack = {cg.source.root};
          while (!stack.empty()) {
            const int n = stack.back();
            stack.pop_back();
            const Node& nd = cg.source.nodes[n];
            auto edges = cg.source.Edges(n);
            if (nd.kind == NodeKind::kDecision &&
                cg.source.players[nd.player].role == Role::kTeam) {
              const int i = src.InfosetOf(n);
              mismatches += back[nd.player][i] != team[nd.player][i];
              stack.push_back(edges[team[nd.player][i]].child);
              continue;
            }
            for (const Edge& e : edges) stack.push_back(e.child);
          }
        }
      }
    }
  }
  return {worst <= 1e-12 && mismatches == 0,
          std::to_string(games.size()) + " games, max diff " + Num(worst) +
              ", round-trip mismatches " + std::to_string(mismatches)};
}

Outcome TurnTaking() {
  const Game g = testing::NonTurnTakingGame();
  if (IsPublicTurnTaking(g)) return {false, "input already turn-taking"};
  const Game t = MakePublicTurnTaking(g);
  const double bound = (g.num_players() + 1.0) * g.num_nodes() * g.num_nodes();
  std::mt19937_64 rng(11);
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    std::map<std::string, std::vector<double>> table;
    const double a = testing::EvalWithSharedBehavior(g, table, rng);
    const double b = testing::EvalWithSharedBehavior(t, table, rng);
    worst = std::max(worst, std::fabs(a - b));
  }
  const bool ok = IsPublicTurnTaking(t) && t.num_nodes() <= bound &&
                  worst <= 1e-12;
  return {ok, std::to_string(g.num_nodes()) + " -> " +
                  std::to_string(t.num_nodes()) + " nodes (bound " +
                  Num(bound) + "), max diff " + Num(worst)};
}

Outcome AbstractionSoundness() {
  ToySpec s;
  s.chance_outcomes = 3;
  s.actions = 3;
  s.with_opponent = true;
  s.payoff_seed = 7;
  const Game g = GenerateToy(s);
  const ConvertedGame pruned = ConvertPruned(g);
  const ConvertedGame ir = ApplySafeImperfectRecall(pruned);
  const std::int64_t before = Census(pruned).coordinator_infosets;
  const std::int64_t after = Census(ir).coordinator_infosets;
  std::vector<double> values;
  const Game candidates[] = {ConvertBasic(g).game, pruned.game,
                             ConvertFolded(g).game, ir.game};
  for (const Game& c : candidates) {
    values.push_back(
        SolveCfr(c, CfrAlgorithm::kLinearCfrPlus, 5000, 5000).log.back()
            .team_value);
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const bool ok = after < before && *hi - *lo <= 1e-3;
  return {ok, "infosets " + std::to_string(before) + " -> " +
                  std::to_string(after) + ", value spread " +
                  Num(*hi - *lo)};
}

}  // namespace
}  // namespace pubteam

int main() {
  using pubteam::Outcome;
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"closed-form size tables", pubteam::ClosedFormTables},
      {"closed forms vs constructed toys", pubteam::FormulaVsConstruction},
      {"Kuhn census", pubteam::KuhnCensus},
      {"Kuhn oracle vs Linear CFR+", pubteam::KuhnOracleVsCfr},
      {"Linear CFR+ convergence", pubteam::Convergence},
      {"payoff equivalence and round trip", pubteam::PayoffEquivalence},
      {"turn-taking transform", pubteam::TurnTaking},
      {"abstraction soundness", pubteam::AbstractionSoundness},
  };
  int failed = 0;
  int index = 1;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    std::printf("criterion %d %s: %s (%.2fs) %s\n", index++, name,
                o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
