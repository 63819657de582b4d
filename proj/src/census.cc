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

#include "pubteam/census.h"

#include <cstdio>

#include "pubteam/info.h"

namespace pubteam {
namespace {

void CheckParams(int chance, int actions, int depth) {
  if (chance < 1 || depth < 1) {
    throw GameError(ErrorCode::kInvalidArgument,
                    "chance and depth must be >= 1");
  }
  if (actions < 2) {
    throw GameError(ErrorCode::kInvalidArgument, "actions must be >= 2");
  }
}

BigInt Pow(int base, long long exp) {
  BigInt out = 1;
  for (long long i = 0; i < exp; ++i) out *= base;
  return out;
}

BigInt Binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt out = 1;
  for (int i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

}  // namespace

NodeCensus Census(const ConvertedGame& cg) {
  NodeCensus c;
  const Game& g = cg.game;
  for (int n = 0; n < g.num_nodes(); ++n) {
    const Node& nd = g.nodes[n];
    const NodeOrigin& o = cg.origin[n];
    switch (nd.kind) {
      case NodeKind::kTerminal:
        ++c.terminal_nodes;
        break;
      case NodeKind::kChance:
        ++c.chance_nodes;
        if (nd.num_edges == 1) ++c.chance_single_child;
        if (o.kind == OriginKind::kPrescriptionChance) {
          ++c.prescription_chance_nodes;
          ++c.prescription_chance_by_member[cg.source.players[o.member].name];
          if (nd.num_edges != 1) ++c.chance_nodes_compacted;
        } else {
          ++c.chance_nodes_compacted;
        }
        break;
      case NodeKind::kDecision:
        if (g.players[nd.player].role == Role::kCoordinator) {
          ++c.coordinator_nodes;
          ++c.coordinator_nodes_by_member[cg.source.players[o.member].name];
        } else {
          ++c.adversary_nodes;
        }
        break;
    }
  }
  c.total_nodes =
      c.coordinator_nodes + c.adversary_nodes + c.terminal_nodes + c.chance_nodes;
  Information info(g);
  c.coordinator_infosets = info.NumInfosets(cg.coordinator());
  c.adversary_infosets = info.NumInfosets(cg.opponent());
  return c;
}

BigInt CountNormalPlans(int chance, int actions, int depth) {
  CheckParams(chance, actions, depth);
  return Pow(actions, static_cast<long long>(chance) * depth);
}

BigInt CountBasic(int chance, int actions, int depth, bool both_private) {
  CheckParams(chance, actions, depth);
  const BigInt fan = Pow(actions, chance);
  BigInt level = both_private ? BigInt(chance) * chance : BigInt(chance);
  BigInt total = 0;
  for (int l = 0; l < depth; ++l) {
    total += level;
    level *= fan;
  }
  return total;
}

BigInt ExclusionChildren(int remaining, int surviving, int actions) {
  if (remaining < 1 || remaining > surviving) return 0;
  return BigInt(actions) * Pow(actions - 1, surviving - remaining) *
         Binomial(surviving - 1, surviving - remaining);
}

std::vector<std::vector<BigInt>> PrunedLevelProfile(int chance, int actions,
                                                    int depth,
                                                    bool both_private) {
  CheckParams(chance, actions, depth);
  std::vector<std::vector<BigInt>> y(depth, std::vector<BigInt>(chance + 1));
  y[0][chance] = both_private ? BigInt(chance) * chance : BigInt(chance);
  for (int l = 1; l < depth; ++l) {
    for (int c = 1; c <= chance; ++c) {
      for (int i = c; i <= chance; ++i) {
        y[l][c] += y[l - 1][i] * ExclusionChildren(c, i, actions);
      }
    }
  }
  return y;
}

BigInt CountPruned(int chance, int actions, int depth, bool both_private) {
  BigInt total = 0;
  for (const auto& level :
       PrunedLevelProfile(chance, actions, depth, both_private)) {
    for (const BigInt& v : level) total += v;
  }
  return total;
}

BigInt CountFolded(int chance, int actions, int depth) {
  // The folded tree starts from a single node holding all C states.
  std::vector<std::vector<BigInt>> y =
      PrunedLevelProfile(chance, actions, depth, false);
  BigInt total = 0;
  for (const auto& level : y) {
    for (int c = 1; c <= chance; ++c) {
      if (level[c] % c != 0) {
        throw GameError(ErrorCode::kNonDivisibleLevelProfile,
                        "level count not divisible by surviving states");
      }
      total += level[c] / c * (Pow(actions, c) + 1);
    }
  }
  return total;
}

std::string Scientific(const BigInt& value, int digits) {
  if (value < 0) return "-" + Scientific(-value, digits);
  std::string s = value.str();
  if (value == 0) s = std::string(digits, '0');
  int exponent = static_cast<int>(value.str().size()) - 1;
  std::string mant;
  if (static_cast<int>(s.size()) <= digits) {
    mant = s + std::string(digits - s.size(), '0');
  } else {
    BigInt scale = Pow(10, static_cast<long long>(s.size()) - digits);
    BigInt q = value / scale;
    BigInt r = value % scale;
    if (r * 2 > scale || (r * 2 == scale && q % 2 == 1)) q += 1;
    mant = q.str();
    if (static_cast<int>(mant.size()) > digits) {  // Rounded up to 10^digits.
      mant = mant.substr(0, digits);
      ++exponent;
    }
  }
  if (value == 0) exponent = 0;
  std::string out = mant.substr(0, 1);
  if (digits > 1) out += "." + mant.substr(1);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "E%c%02d", exponent < 0 ? '-' : '+',
                exponent < 0 ? -exponent : exponent);
  return out + buf;
}

}  // namespace pubteam
