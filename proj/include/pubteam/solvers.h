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

#ifndef PUBTEAM_SOLVERS_H_
#define PUBTEAM_SOLVERS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "pubteam/game.h"
#include "pubteam/info.h"

namespace pubteam {

// Behavioral strategies: probs[player][infoset][action].
struct Profile {
  std::vector<std::vector<std::vector<double>>> probs;
};

Profile UniformProfile(const Information& info);

// Per global edge index: chance probability or the acting player's action
// probability under `profile`.
std::vector<double> EdgeProbabilities(const Game& game,
                                      const Information& info,
                                      const Profile& profile);

// Team utility in expectation. Edge probabilities cover chance and players.
double ExpectedValue(const Game& game, const std::vector<double>& edge_probs);
double ExpectedValue(const Game& game, const Information& info,
                     const Profile& profile);

// Per node: product of all edge probabilities on the path except those of
// `excluded` player's decisions.
std::vector<double> ReachExcluding(const Game& game,
                                   const std::vector<double>& edge_probs,
                                   int excluded);

struct BestResponseResult {
  double value = 0.0;       // In the responder's utility.
  std::vector<int> action;  // Per responder infoset; -1 where unreached.
};

// `info` must give the responder perfect recall. `others_reach` is per node.
BestResponseResult BestResponseFromReach(const Game& game,
                                         const Information& info,
                                         int responder,
                                         const std::vector<double>& others_reach);
BestResponseResult BestResponse(const Game& game, const Information& info,
                                int responder,
                                const std::vector<double>& edge_probs);

// Throws kNotTwoPlayerZeroSum unless the game has exactly one opponent and
// one other player. Returns the index of the non-opponent player.
int CheckTwoPlayerZeroSum(const Game& game);

struct ExploitabilityReport {
  double team_value = 0.0;
  double team_best_response = 0.0;      // Team utility.
  double opponent_best_response = 0.0;  // Opponent utility.
  double exploitability = 0.0;
};

// Sum of both best-response gaps. Best responses are taken over perfect
// recall infosets even when the profile lives on merged ones.
ExploitabilityReport Exploitability(const Game& game, const Information& info,
                                    const Profile& profile);

enum class CfrAlgorithm { kCfr, kCfrPlus, kLinearCfrPlus };

const char* CfrAlgorithmName(CfrAlgorithm algo);
CfrAlgorithm ParseCfrAlgorithm(const std::string& name);

struct ConvergenceRow {
  std::int64_t iteration;
  double team_value;
  double exploitability;
};

struct CfrResult {
  Profile average;
  std::vector<ConvergenceRow> log;
  // Smallest stored regret after the last iteration.
  double min_regret = 0.0;
};

CfrResult SolveCfr(const Game& game, CfrAlgorithm algo,
                   std::int64_t iterations, std::int64_t log_every);

std::string ConvergenceCsv(const std::vector<ConvergenceRow>& log);

// {infoset key: {action label: probability}}.
nlohmann::json ProfileToJson(const Game& game, const Information& info,
                             const Profile& profile);

}  // namespace pubteam

#endif  // PUBTEAM_SOLVERS_H_
