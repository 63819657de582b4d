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

#include "pubteam/game.h"

#include <functional>

#include <gtest/gtest.h>

#include "pubteam/census.h"
#include "pubteam/conversion.h"
#include "pubteam/generators.h"
#include "pubteam/json_io.h"
#include "test_util.h"

namespace pubteam {
namespace {

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const GameError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no GameError thrown";
  return ErrorCode::kInvalidArgument;
}

json TinyToyJson() {
  ToySpec s;
  s.chance_outcomes = 1;
  return GameToJson(GenerateToy(s));
}

int NodeIndex(const json& j, const std::string& kind) {
  for (std::size_t i = 0; i < j["nodes"].size(); ++i) {
    if (j["nodes"][i]["kind"] == kind) return static_cast<int>(i);
  }
  return -1;
}

TEST(GameTest, BuilderLinksParents) {
  const Game g = testing::MatchingPennies();
  EXPECT_EQ(g.num_nodes(), 7);
  EXPECT_EQ(g.nodes[g.root].parent, -1);
  for (int n = 0; n < g.num_nodes(); ++n) {
    for (const Edge& e : g.Edges(n)) EXPECT_EQ(g.nodes[e.child].parent, n);
  }
  EXPECT_EQ(g.Opponent(), 1);
  EXPECT_EQ(g.PreOrder().front(), g.root);
}

TEST(GameTest, RejectsUnnormalizedChance) {
  GameBuilder b("bad", {{"t", Role::kTeam}, {"o", Role::kOpponent}});
  std::vector<GameBuilder::EdgeSpec> e = {
      {b.Label("x"), b.AddTerminal(0), 0.5, 0},
      {b.Label("y"), b.AddTerminal(0), 0.4, 0}};
  const int root = b.AddChance(e);
  EXPECT_EQ(CodeOf([&] { b.Build(root); }),
            ErrorCode::kProbabilityNotNormalized);
}

TEST(GameTest, JsonDuplicateNodeId) {
  json j = TinyToyJson();
  j["nodes"].push_back(j["nodes"][0]);
  EXPECT_EQ(CodeOf([&] { GameFromJson(j); }), ErrorCode::kDuplicateNodeId);
}

TEST(GameTest, JsonMissingVisibilityEntry) {
  json j = TinyToyJson();
  j["nodes"][NodeIndex(j, "decision")]["edges"][0]["vis"].erase("o");
  EXPECT_EQ(CodeOf([&] { GameFromJson(j); }),
            ErrorCode::kMissingVisibilityEntry);
}

TEST(GameTest, JsonUnknownPlayer) {
  json j = TinyToyJson();
  j["nodes"][NodeIndex(j, "decision")]["player"] = "zz";
  EXPECT_EQ(CodeOf([&] { GameFromJson(j); }), ErrorCode::kUnknownPlayer);
}

TEST(GameTest, JsonSharedChildIsRejected) {
  json j = TinyToyJson();
  json& edges = j["nodes"][NodeIndex(j, "decision")]["edges"];
  edges[1]["child"] = edges[0]["child"];
  EXPECT_EQ(CodeOf([&] { GameFromJson(j); }), ErrorCode::kCyclicStructure);
}

TEST(GameTest, JsonSelfLoopIsRejected) {
  json j = TinyToyJson();
  json& node = j["nodes"][NodeIndex(j, "decision")];
  node["edges"][0]["child"] = node["id"];
  EXPECT_EQ(CodeOf([&] { GameFromJson(j); }), ErrorCode::kCyclicStructure);
}

TEST(GameTest, JsonRoundTripAndFingerprint) {
  PokerSpec s;
  s.adversary_position = 1;
  const Game g = GenerateKuhn3(s);
  const json j = GameToJson(g);
  const Game back = GameFromJson(j);
  EXPECT_EQ(GameToJson(back).dump(), j.dump());
  EXPECT_EQ(Fingerprint(back), Fingerprint(g));
  json changed = j;
  changed["nodes"][0]["team_utility"] = 17.0;
  EXPECT_NE(Fingerprint(GameFromJson(changed)), Fingerprint(g));
}

TEST(GameTest, ConvertedRoundTripKeepsCensus) {
  PokerSpec s;
  const ConvertedGame cg =
      ApplySafeImperfectRecall(ConvertFolded(GenerateKuhn3(s)));
  const json j = ConvertedToJson(cg);
  const ConvertedGame back = ConvertedFromJson(j);
  EXPECT_EQ(ConvertedToJson(back).dump(), j.dump());
  const NodeCensus a = Census(cg);
  const NodeCensus b = Census(back);
  EXPECT_EQ(a.total_nodes, b.total_nodes);
  EXPECT_EQ(a.coordinator_infosets, b.coordinator_infosets);
  EXPECT_EQ(back.source_fingerprint, Fingerprint(GenerateKuhn3(s)));
}

TEST(GameTest, PlainGameHasNoOrigin) {
  json j = TinyToyJson();
  EXPECT_FALSE(HasOrigin(j));
  EXPECT_EQ(CodeOf([&] { ConvertedFromJson(j); }), ErrorCode::kOriginMismatch);
}

}  // namespace
}  // namespace pubteam
