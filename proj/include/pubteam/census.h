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

#ifndef PUBTEAM_CENSUS_H_
#define PUBTEAM_CENSUS_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pubteam/conversion.h"

namespace pubteam {

using BigInt = boost::multiprecision::cpp_int;

struct NodeCensus {
  std::int64_t coordinator_nodes = 0;
  std::int64_t adversary_nodes = 0;
  std::int64_t terminal_nodes = 0;
  std::int64_t chance_nodes = 0;
  std::int64_t chance_single_child = 0;
  std::int64_t total_nodes = 0;
  std::int64_t coordinator_infosets = 0;
  std::int64_t adversary_infosets = 0;
  // Chance nodes left once single-outcome prescription chance nodes are
  // merged into their parent edge.
  std::int64_t chance_nodes_compacted = 0;
  std::int64_t prescription_chance_nodes = 0;
  // Keyed by source team-member name.
  std::map<std::string, std::int64_t> coordinator_nodes_by_member;
  std::map<std::string, std::int64_t> prescription_chance_by_member;
};

NodeCensus Census(const ConvertedGame& cg);

// Closed-form sizes for the toy game with C chance outcomes, A actions and H
// decision levels of P1. Basic and pruned count P1 coordinator nodes (dummy
// chance compacted); folded counts P1 coordinator plus prescription chance
// nodes.
BigInt CountNormalPlans(int chance, int actions, int depth);
BigInt CountBasic(int chance, int actions, int depth, bool both_private);
BigInt CountPruned(int chance, int actions, int depth, bool both_private);
BigInt CountFolded(int chance, int actions, int depth);

// Number of children of a node with `surviving` private states that keep
// exactly `remaining` of them: A (A-1)^(I-i) binom(I-1, I-i).
BigInt ExclusionChildren(int remaining, int surviving, int actions);

// Level profile: profile[l][c] = nodes at level l with c surviving states.
std::vector<std::vector<BigInt>> PrunedLevelProfile(int chance, int actions,
                                                    int depth,
                                                    bool both_private);

// "4.40E+12" style rounding to `digits` significant digits (ties to even).
std::string Scientific(const BigInt& value, int digits = 3);

}  // namespace pubteam

#endif  // PUBTEAM_CENSUS_H_
