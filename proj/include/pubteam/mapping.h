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

#ifndef PUBTEAM_MAPPING_H_
#define PUBTEAM_MAPPING_H_

#include <cstdint>

#include "pubteam/conversion.h"
#include "pubteam/info.h"
#include "pubteam/normal_form.h"

namespace pubteam {

// Pure strategy translation between a team game (cg.source) and its
// conversion. `source_info` is Information(cg.source) and `conv_info` is
// Information(cg.game).

// Coordinator plan prescribing at every coordinator node the actions the
// team plan takes on the prescription domain. Infosets the team plan leaves
// open are prescribed action 0.
Plan MapTeamToCoordinator(const ConvertedGame& cg,
                          const Information& source_info,
                          const Information& conv_info, const JointPlan& team);

// Team plan taking, at each original infoset, the action the coordinator
// prescribes at the first coordinator node (in a depth-first walk along the
// coordinator plan) whose domain contains it. Unreached infosets play 0.
JointPlan MapCoordinatorToTeam(const ConvertedGame& cg,
                               const Information& source_info,
                               const Information& conv_info,
                               const Plan& coordinator);

// Opponent plans carry over by infoset key.
Plan MapOpponentToConverted(const ConvertedGame& cg,
                            const Information& source_info,
                            const Information& conv_info, const Plan& plan);
Plan MapOpponentToSource(const ConvertedGame& cg,
                         const Information& source_info,
                         const Information& conv_info, const Plan& plan);

struct EquivalenceReport {
  int samples = 0;
  double max_abs_diff = 0.0;
};

// Samples uniform pure team and opponent plans on cg.source, maps them into
// the converted game and compares expected utilities over chance.
EquivalenceReport CheckPayoffEquivalence(const ConvertedGame& cg, int samples,
                                         std::uint64_t seed);

}  // namespace pubteam

#endif  // PUBTEAM_MAPPING_H_
