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

#ifndef PUBTEAM_GENERATORS_H_
#define PUBTEAM_GENERATORS_H_

#include <cstdint>
#include <optional>

#include "pubteam/game.h"

namespace pubteam {

// Team P1/P2 ("p1", "p2") and an opponent "o". Chance deals P1 one of C
// outcomes; P1 then acts H times with A actions, unseen by P2; P2 acts once.
struct ToySpec {
  int chance_outcomes = 3;
  int actions = 2;
  int depth = 1;
  bool both_private = false;  // P2 also receives a private outcome.
  bool with_opponent = false;  // Append an opponent level seeing P2's action.
  std::optional<std::uint64_t> payoff_seed;  // Utilities in [-1, 1]; else 0.
};

Game GenerateToy(const ToySpec& spec);

// Three players "p0".."p2"; the player at adversary_position is the opponent.
struct PokerSpec {
  int ranks = 3;
  int raises = 1;  // Leduc only: raise cap per betting round (1 or 2).
  int adversary_position = 0;
};

// Ante 1, one card per player, one betting round with a single raise of 1.
Game GenerateKuhn3(const PokerSpec& spec);

// Three cards per rank, private card, betting, public board card, betting.
// Raise sizes are 2 for the first raise of a round and 4 for the second.
Game GenerateLeduc3(const PokerSpec& spec);

}  // namespace pubteam

#endif  // PUBTEAM_GENERATORS_H_
