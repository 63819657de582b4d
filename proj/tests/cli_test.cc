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

#include "pubteam/cli.h"

#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "pubteam/json_io.h"
#include "test_util.h"

namespace pubteam {
namespace {

using nlohmann::json;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Tmp(const std::string& name) {
  return ::testing::TempDir() + "/pubteam_cli_" + name;
}

std::string ReadFile(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

TEST(CliTest, InvalidParameters) {
  EXPECT_EQ(Cli({}).code, kExitInvalidParams);
  EXPECT_EQ(Cli({"gen", "kuhn"}).code, kExitInvalidParams);
  EXPECT_EQ(Cli({"gen", "chess", "--out", Tmp("x.json")}).code,
            kExitInvalidParams);
  EXPECT_EQ(Cli({"gen", "toy", "--actions", "1", "--out", Tmp("x.json")}).code,
            kExitInvalidParams);
  EXPECT_EQ(Cli({"gen", "kuhn", "--ranks", "2", "--out", Tmp("x.json")}).code,
            kExitInvalidParams);
  EXPECT_EQ(Cli({"count", "--hmin", "3", "--hmax", "2"}).code,
            kExitInvalidParams);
  ASSERT_EQ(Cli({"gen", "toy", "--out", Tmp("toy.json")}).code, kExitOk);
  EXPECT_EQ(Cli({"convert", "--in", Tmp("toy.json"), "--mode", "basic",
                 "--safe-ir", "--out", Tmp("c.json")})
                .code,
            kExitInvalidParams);
  EXPECT_EQ(Cli({"convert", "--in", Tmp("toy.json"), "--mode", "flat",
                 "--out", Tmp("c.json")})
                .code,
            kExitInvalidParams);
  EXPECT_EQ(Cli({"census", "--in", Tmp("toy.json")}).code, kExitInvalidParams);
}

TEST(CliTest, IoFailure) {
  EXPECT_EQ(Cli({"convert", "--in", Tmp("missing.json"), "--out",
                 Tmp("c.json")})
                .code,
            kExitIo);
  EXPECT_EQ(Cli({"gen", "toy", "--out", "/nonexistent/dir/x.json"}).code,
            kExitIo);
}

TEST(CliTest, ValidationFailure) {
  std::ofstream(Tmp("bad.json")) << "{\"nodes\": 3";
  EXPECT_EQ(Cli({"convert", "--in", Tmp("bad.json"), "--out", Tmp("c.json")})
                .code,
            kExitValidation);
  ASSERT_EQ(Cli({"gen", "kuhn", "--out", Tmp("kuhn.json")}).code, kExitOk);
  EXPECT_EQ(Cli({"solve", "--in", Tmp("kuhn.json")}).code, kExitValidation);
}

TEST(CliTest, GameTooLarge) {
  ASSERT_EQ(Cli({"gen", "kuhn", "--out", Tmp("kuhn.json")}).code, kExitOk);
  EXPECT_EQ(Cli({"oracle", "--in", Tmp("kuhn.json"), "--max-entries", "10"})
                .code,
            kExitTooLarge);
}

TEST(CliTest, OriginMismatch) {
  ASSERT_EQ(Cli({"gen", "kuhn", "--out", Tmp("k0.json")}).code, kExitOk);
  ASSERT_EQ(
      Cli({"gen", "kuhn", "--adv-pos", "1", "--out", Tmp("k1.json")}).code,
      kExitOk);
  ASSERT_EQ(Cli({"convert", "--in", Tmp("k0.json"), "--out", Tmp("c0.json")})
                .code,
            kExitOk);
  EXPECT_EQ(Cli({"verify", "--in", Tmp("k1.json"), "--converted",
                 Tmp("c0.json")})
                .code,
            kExitOriginMismatch);
}

TEST(CliTest, CorruptedConversionIsDetected) {
  ASSERT_EQ(Cli({"gen", "kuhn", "--out", Tmp("k.json")}).code, kExitOk);
  ASSERT_EQ(Cli({"convert", "--in", Tmp("k.json"), "--out", Tmp("kc.json")})
                .code,
            kExitOk);
  json j = json::parse(ReadFile(Tmp("kc.json")));
  int corrupted = 0;
  for (json& node : j["nodes"]) {
    if (node["kind"] == "terminal" && corrupted < 50) {
      node["team_utility"] = node["team_utility"].get<double>() + 10.0;
      ++corrupted;
    }
  }
  std::ofstream(Tmp("kc_bad.json")) << j.dump();
  const CliRun r = Cli({"verify", "--in", Tmp("k.json"), "--converted",
                     Tmp("kc_bad.json"), "--samples", "200"});
  EXPECT_EQ(r.code, kExitDiscrepancy) << r.err;
}

TEST(CliTest, OutputsAreDeterministic) {
  for (int run = 0; run < 2; ++run) {
    const std::string s = std::to_string(run);
    ASSERT_EQ(Cli({"gen", "toy", "--actions", "3", "--opponent",
                   "--payoff-seed", "7", "--out", Tmp("d" + s + ".json")})
                  .code,
              kExitOk);
    ASSERT_EQ(Cli({"convert", "--in", Tmp("d" + s + ".json"), "--safe-ir",
                   "--out", Tmp("dc" + s + ".json")})
                  .code,
              kExitOk);
    ASSERT_EQ(Cli({"solve", "--in", Tmp("dc" + s + ".json"), "--iterations",
                   "50", "--csv", Tmp("d" + s + ".csv"), "--strategy",
                   Tmp("ds" + s + ".json")})
                  .code,
              kExitOk);
  }
  for (const char* f : {"d%.json", "dc%.json", "d%.csv", "ds%.json"}) {
    std::string a = f, b = f;
    a.replace(a.find('%'), 1, "0");
    b.replace(b.find('%'), 1, "1");
    EXPECT_EQ(ReadFile(Tmp(a)), ReadFile(Tmp(b))) << f;
    EXPECT_FALSE(ReadFile(Tmp(a)).empty());
  }
}

TEST(CliTest, KuhnPipeline) {
  for (int adv = 0; adv < 3; ++adv) {
    const std::string s = std::to_string(adv);
    const std::string game = Tmp("p" + s + ".json");
    const std::string conv = Tmp("pc" + s + ".json");
    ASSERT_EQ(Cli({"gen", "kuhn", "--adv-pos", s, "--out", game}).code,
              kExitOk);
    ASSERT_EQ(Cli({"convert", "--in", game, "--out", conv}).code, kExitOk);
    const CliRun solve =
        Cli({"solve", "--in", conv, "--iterations", "500", "--json"});
    ASSERT_EQ(solve.code, kExitOk);
    const json j = json::parse(solve.out);
    EXPECT_LE(j["exploitability"].get<double>(), 1e-2);
    const CliRun verify =
        Cli({"verify", "--in", game, "--converted", conv, "--samples", "200"});
    EXPECT_EQ(verify.code, kExitOk) << verify.err;
  }
}

TEST(CliTest, ZeroIterationsWritesHeaderOnly) {
  ASSERT_EQ(Cli({"gen", "toy", "--opponent", "--out", Tmp("z.json")}).code,
            kExitOk);
  ASSERT_EQ(Cli({"convert", "--in", Tmp("z.json"), "--out", Tmp("zc.json")})
                .code,
            kExitOk);
  ASSERT_EQ(Cli({"solve", "--in", Tmp("zc.json"), "--iterations", "0", "--csv",
                 Tmp("z.csv")})
                .code,
            kExitOk);
  EXPECT_EQ(ReadFile(Tmp("z.csv")), "iteration,team_value,exploitability\n");
}

TEST(CliTest, ZeroSamplesWarns) {
  ASSERT_EQ(Cli({"gen", "toy", "--out", Tmp("w.json")}).code, kExitOk);
  ASSERT_EQ(Cli({"convert", "--in", Tmp("w.json"), "--out", Tmp("wc.json")})
                .code,
            kExitOk);
  const CliRun r = Cli({"verify", "--in", Tmp("w.json"), "--converted",
                     Tmp("wc.json"), "--samples", "0"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST(CliTest, ConvertSummaries) {
  ASSERT_EQ(Cli({"gen", "kuhn", "--out", Tmp("s.json")}).code, kExitOk);
  const CliRun kuhn = Cli({"convert", "--in", Tmp("s.json"), "--mode", "folded",
                        "--safe-ir", "--out", Tmp("sc.json")});
  ASSERT_EQ(kuhn.code, kExitOk);
  EXPECT_NE(kuhn.out.find("total_nodes: 2890\n"), std::string::npos);
  EXPECT_NE(kuhn.out.find("coordinator_infosets: 86\n"), std::string::npos);
  const CliRun census = Cli({"census", "--in", Tmp("sc.json"), "--json"});
  ASSERT_EQ(census.code, kExitOk);
  EXPECT_EQ(json::parse(census.out)["total_nodes"], 2890);

  ASSERT_EQ(Cli({"gen", "toy", "--depth", "3", "--out", Tmp("t.json")}).code,
            kExitOk);
  const CliRun toy = Cli({"convert", "--in", Tmp("t.json"), "--mode", "pruned",
                       "--out", Tmp("tc.json")});
  ASSERT_EQ(toy.code, kExitOk);
  EXPECT_NE(toy.out.find("coordinator_nodes[p1]: 135\n"), std::string::npos);
}

TEST(CliTest, NonTurnTakingWarning) {
  SaveJsonFile(Tmp("n.json"), GameToJson(testing::NonTurnTakingGame()));
  const CliRun r =
      Cli({"convert", "--in", Tmp("n.json"), "--out", Tmp("nc.json")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  EXPECT_EQ(Cli({"verify", "--in", Tmp("n.json"), "--converted",
                 Tmp("nc.json"), "--samples", "100"})
                .code,
            kExitOk);
}

TEST(CliTest, CountTable) {
  const CliRun r = Cli({"count", "--hmin", "3", "--hmax", "3"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out,
            "H,normal,basic,pruning,folding\n"
            "3,5.12E+02,2.19E+02,1.35E+02,3.75E+02\n");
  const CliRun exact = Cli({"count", "--hmin", "14", "--hmax", "14", "--exact"});
  EXPECT_NE(exact.out.find("14,4398046511104,"), std::string::npos);
}

TEST(CliTest, HelpExitsCleanly) {
  const CliRun r = Cli({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("convert"), std::string::npos);
}

}  // namespace
}  // namespace pubteam
