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

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "pubteam/census.h"
#include "pubteam/conversion.h"
#include "pubteam/generators.h"
#include "pubteam/json_io.h"
#include "pubteam/mapping.h"
#include "pubteam/normal_form.h"
#include "pubteam/solvers.h"

namespace pubteam {
namespace {

std::string Fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw GameError(ErrorCode::kIo, "cannot write " + path);
  f << text;
  if (!f) throw GameError(ErrorCode::kIo, "write failed for " + path);
}

json CensusToJson(const NodeCensus& c) {
  json j;
  j["coordinator_nodes"] = c.coordinator_nodes;
  j["adversary_nodes"] = c.adversary_nodes;
  j["terminal_nodes"] = c.terminal_nodes;
  j["chance_nodes"] = c.chance_nodes;
  j["chance_single_child"] = c.chance_single_child;
  j["total_nodes"] = c.total_nodes;
  j["chance_nodes_compacted"] = c.chance_nodes_compacted;
  j["total_nodes_compacted"] =
      c.total_nodes - c.chance_nodes + c.chance_nodes_compacted;
  j["prescription_chance_nodes"] = c.prescription_chance_nodes;
  j["coordinator_infosets"] = c.coordinator_infosets;
  j["adversary_infosets"] = c.adversary_infosets;
  j["coordinator_nodes_by_member"] = c.coordinator_nodes_by_member;
  j["prescription_chance_by_member"] = c.prescription_chance_by_member;
  return j;
}

void PrintCensus(const NodeCensus& c, bool compact, std::ostream& out) {
  const std::int64_t chance =
      compact ? c.chance_nodes_compacted : c.chance_nodes;
  out << "coordinator_nodes: " << c.coordinator_nodes << "\n"
      << "adversary_nodes: " << c.adversary_nodes << "\n"
      << "terminal_nodes: " << c.terminal_nodes << "\n"
      << "chance_nodes: " << chance << "\n"
      << "chance_single_child: " << c.chance_single_child << "\n"
      << "total_nodes: " << c.total_nodes - c.chance_nodes + chance << "\n"
      << "coordinator_infosets: " << c.coordinator_infosets << "\n"
      << "adversary_infosets: " << c.adversary_infosets << "\n";
  for (const auto& [name, count] : c.coordinator_nodes_by_member) {
    out << "coordinator_nodes[" << name << "]: " << count << "\n";
  }
  for (const auto& [name, count] : c.prescription_chance_by_member) {
    out << "prescription_chance_nodes[" << name << "]: " << count << "\n";
  }
}

struct Options {
  // gen
  std::string kind;
  int chance = 3;
  int actions = 2;
  int depth = 1;
  bool both_private = false;
  bool opponent = false;
  std::optional<std::uint64_t> payoff_seed;
  int ranks = 3;
  int adv_pos = 0;
  int raises = 1;
  // shared
  std::string in;
  std::string out;
  bool json_summary = false;
  // convert
  std::string mode = "folded";
  bool safe_ir = false;
  bool compact = false;
  // solve
  std::string algo = "lcfr+";
  std::int64_t iterations = 1000;
  std::int64_t log_every = 100;
  std::string csv;
  std::string strategy;
  // oracle
  double tol = 1e-9;
  double max_entries = TmecorOptions().max_entries;
  // verify
  std::string converted;
  int samples = 1000;
  std::uint64_t seed = 0;
  // count
  int hmin = 1;
  int hmax = 14;
  bool exact = false;
};

int CmdGen(const Options& o, std::ostream& out) {
  Game g;
  if (o.kind == "toy") {
    ToySpec s;
    s.chance_outcomes = o.chance;
    s.actions = o.actions;
    s.depth = o.depth;
    s.both_private = o.both_private;
    s.with_opponent = o.opponent;
    s.payoff_seed = o.payoff_seed;
    g = GenerateToy(s);
  } else {
    PokerSpec s;
    s.ranks = o.ranks;
    s.adversary_position = o.adv_pos;
    s.raises = o.raises;
    g = o.kind == "kuhn" ? GenerateKuhn3(s) : GenerateLeduc3(s);
  }
  SaveJsonFile(o.out, GameToJson(g));
  const Information info(g);
  json summary;
  summary["game"] = g.name;
  summary["nodes"] = g.num_nodes();
  summary["players"] = g.num_players();
  for (int p = 0; p < g.num_players(); ++p) {
    if (info.NumInfosets(p) == 0) continue;
    summary["plans"][g.players[p].name] = PlanTree(info, p).Count();
  }
  if (o.json_summary) {
    out << summary.dump() << "\n";
    return kExitOk;
  }
  out << "game: " << g.name << "\n"
      << "nodes: " << g.num_nodes() << "\n"
      << "players: " << g.num_players() << "\n";
  for (auto& [name, count] : summary["plans"].items()) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.0f", count.get<double>());
    out << "plans[" << name << "]: " << buf << "\n";
  }
  return kExitOk;
}

int CmdConvert(const Options& o, std::ostream& out, std::ostream& err) {
  const ConversionMode mode = ParseConversionMode(o.mode);
  if (o.safe_ir && mode == ConversionMode::kBasic) {
    throw GameError(ErrorCode::kExclusionDataMissing,
                    "safe imperfect recall needs pruned or folded mode");
  }
  const Game g = GameFromJson(LoadJsonFile(o.in));
  ConvertedGame cg = Convert(g, mode);
  if (cg.turn_taking_applied) {
    err << "warning: actor order is not common knowledge; inserted noop "
           "nodes\n";
  }
  if (o.safe_ir) cg = ApplySafeImperfectRecall(cg);
  SaveJsonFile(o.out, ConvertedToJson(cg));
  const NodeCensus c = Census(cg);
  if (o.json_summary) {
    out << CensusToJson(c).dump() << "\n";
  } else {
    out << "mode: " << ConversionModeName(cg.mode) << "\n"
        << "safe_ir: " << (cg.safe_ir_applied ? "true" : "false") << "\n";
    PrintCensus(c, o.compact, out);
  }
  return kExitOk;
}

int CmdSolve(const Options& o, std::ostream& out) {
  const Game g = GameFromJson(LoadJsonFile(o.in));
  CheckTwoPlayerZeroSum(g);
  const CfrResult r =
      SolveCfr(g, ParseCfrAlgorithm(o.algo), o.iterations, o.log_every);
  const Information info(g);
  const ExploitabilityReport e = Exploitability(g, info, r.average);
  if (!o.csv.empty()) WriteText(o.csv, ConvergenceCsv(r.log));
  if (!o.strategy.empty()) {
    SaveJsonFile(o.strategy, ProfileToJson(g, info, r.average));
  }
  if (o.json_summary) {
    json j;
    j["iterations"] = o.iterations;
    j["team_value"] = e.team_value;
    j["exploitability"] = e.exploitability;
    out << j.dump() << "\n";
  } else {
    out << "iterations: " << o.iterations << "\n"
        << "team_value: " << Fmt(e.team_value) << "\n"
        << "exploitability: " << Fmt(e.exploitability) << "\n";
  }
  return kExitOk;
}

int CmdOracle(const Options& o, std::ostream& out) {
  if (!(o.tol > 0.0)) {
    throw GameError(ErrorCode::kInvalidArgument, "tol must be > 0");
  }
  const Game g = GameFromJson(LoadJsonFile(o.in));
  TmecorOptions opts;
  opts.tol = o.tol;
  opts.max_entries = o.max_entries;
  const TmecorResult r = TmecorBruteForce(g, opts);
  if (o.json_summary) {
    json j;
    j["value"] = r.value;
    j["lower"] = r.lower;
    j["upper"] = r.upper;
    j["team_support"] = r.team_support.size();
    j["opponent_support"] = r.opponent_support.size();
    j["joint_team_plans"] = r.joint_team_plans;
    j["opponent_plans"] = r.opponent_plans;
    out << j.dump() << "\n";
  } else {
    out << "value: " << Fmt(r.value) << "\n"
        << "lower: " << Fmt(r.lower) << "\n"
        << "upper: " << Fmt(r.upper) << "\n"
        << "team_support: " << r.team_support.size() << "\n"
        << "opponent_support: " << r.opponent_support.size() << "\n"
        << "joint_team_plans: " << Fmt(r.joint_team_plans) << "\n"
        << "opponent_plans: " << Fmt(r.opponent_plans) << "\n";
  }
  return kExitOk;
}

int CmdVerify(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.samples < 0) {
    throw GameError(ErrorCode::kInvalidArgument, "samples must be >= 0");
  }
  const Game g = GameFromJson(LoadJsonFile(o.in));
  const json cj = LoadJsonFile(o.converted);
  const ConvertedGame cg = ConvertedFromJson(cj);
  if (Fingerprint(g) != cg.source_fingerprint) {
    throw GameError(ErrorCode::kOriginMismatch,
                    "converted file was not produced from this input");
  }
  if (Fingerprint(PrepareForConversion(g, nullptr, cg.turn_taking_applied)) !=
      Fingerprint(cg.source)) {
    throw GameError(ErrorCode::kOriginMismatch,
                    "stored source differs from the prepared input");
  }
  double diff = 0.0;
  if (o.samples == 0) {
    err << "warning: 0 samples, nothing checked\n";
  } else {
    diff = CheckPayoffEquivalence(cg, o.samples, o.seed).max_abs_diff;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3e", diff);
  if (o.json_summary) {
    json j;
    j["samples"] = o.samples;
    j["max_abs_diff"] = diff;
    out << j.dump() << "\n";
  } else {
    out << "samples: " << o.samples << "\n"
        << "max_abs_diff: " << buf << "\n";
  }
  return diff <= 1e-9 ? kExitOk : kExitDiscrepancy;
}

int CmdCensus(const Options& o, std::ostream& out) {
  const json j = LoadJsonFile(o.in);
  if (!HasOrigin(j)) {
    throw GameError(ErrorCode::kInvalidArgument,
                    "census needs a converted game file");
  }
  const NodeCensus c = Census(ConvertedFromJson(j));
  if (o.json_summary) {
    out << CensusToJson(c).dump() << "\n";
  } else {
    PrintCensus(c, o.compact, out);
  }
  return kExitOk;
}

int CmdCount(const Options& o, std::ostream& out) {
  if (o.hmin < 1 || o.hmax < o.hmin) {
    throw GameError(ErrorCode::kInvalidArgument, "need 1 <= hmin <= hmax");
  }
  auto show = [&](const BigInt& v) {
    return o.exact ? v.str() : Scientific(v);
  };
  out << "H,normal,basic,pruning,folding\n";
  for (int h = o.hmin; h <= o.hmax; ++h) {
    out << h << "," << show(CountNormalPlans(o.chance, o.actions, h)) << ","
        << show(CountBasic(o.chance, o.actions, h, o.both_private)) << ","
        << show(CountPruned(o.chance, o.actions, h, o.both_private)) << ","
        << show(CountFolded(o.chance, o.actions, h)) << "\n";
  }
  return kExitOk;
}

}  // namespace

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kSpecOutOfBounds:
    case ErrorCode::kExclusionDataMissing:
    case ErrorCode::kNonDivisibleLevelProfile:
      return kExitInvalidParams;
    case ErrorCode::kIo:
      return kExitIo;
    case ErrorCode::kGameTooLarge:
      return kExitTooLarge;
    case ErrorCode::kOriginMismatch:
      return kExitOriginMismatch;
    default:
      return kExitValidation;
  }
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  Options o;
  CLI::App app{"Team game conversion, solving and verification"};
  app.require_subcommand(1);

  CLI::App* gen = app.add_subcommand("gen", "Generate a game file");
  gen->add_option("kind", o.kind, "toy, kuhn or leduc")
      ->required()
      ->check(CLI::IsMember({"toy", "kuhn", "leduc"}));
  gen->add_option("--chance", o.chance, "Toy: chance outcomes C");
  gen->add_option("--actions", o.actions, "Toy: actions A");
  gen->add_option("--depth", o.depth, "Toy: decision levels H");
  gen->add_flag("--both-private", o.both_private,
                "Toy: P2 also gets a private outcome");
  gen->add_flag("--opponent", o.opponent, "Toy: append an opponent level");
  gen->add_option("--payoff-seed", o.payoff_seed, "Toy: random payoffs");
  gen->add_option("--ranks", o.ranks, "Poker: number of ranks");
  gen->add_option("--adv-pos", o.adv_pos, "Poker: opponent seat 0..2");
  gen->add_option("--raises", o.raises, "Leduc: raises per round (1 or 2)");
  gen->add_option("--out", o.out, "Output game file")->required();
  gen->add_flag("--json", o.json_summary, "Machine-readable summary");

  CLI::App* convert = app.add_subcommand("convert", "Convert a team game");
  convert->add_option("--in", o.in, "Input game file")->required();
  convert->add_option("--mode", o.mode, "basic, pruned or folded");
  convert->add_flag("--safe-ir", o.safe_ir, "Merge coordinator infosets");
  convert->add_flag("--compact", o.compact,
                    "Report chance counts without single-outcome "
                    "prescription chance nodes");
  convert->add_option("--out", o.out, "Output converted file")->required();
  convert->add_flag("--json", o.json_summary, "Machine-readable summary");

  CLI::App* solve = app.add_subcommand("solve", "Run a CFR variant");
  solve->add_option("--in", o.in, "Two-player zero-sum game file")
      ->required();
  solve->add_option("--algo", o.algo, "cfr, cfr+ or lcfr+");
  solve->add_option("--iterations", o.iterations, "Iterations");
  solve->add_option("--log-every", o.log_every, "Log period");
  solve->add_option("--csv", o.csv, "Convergence log CSV");
  solve->add_option("--strategy", o.strategy, "Average strategy JSON");
  solve->add_flag("--json", o.json_summary, "Machine-readable summary");

  CLI::App* oracle = app.add_subcommand("oracle", "Brute-force TMECor");
  oracle->add_option("--in", o.in, "Team game file")->required();
  oracle->add_option("--tol", o.tol, "Certified gap");
  oracle->add_option("--max-entries", o.max_entries,
                     "Guard on joint team plans x opponent plans");
  oracle->add_flag("--json", o.json_summary, "Machine-readable summary");

  CLI::App* verify = app.add_subcommand("verify", "Check payoff equivalence");
  verify->add_option("--in", o.in, "Original game file")->required();
  verify->add_option("--converted", o.converted, "Converted game file")
      ->required();
  verify->add_option("--samples", o.samples, "Sampled pure profiles");
  verify->add_option("--seed", o.seed, "Sampling seed");
  verify->add_flag("--json", o.json_summary, "Machine-readable summary");

  CLI::App* census = app.add_subcommand("census", "Node census");
  census->add_option("--in", o.in, "Converted game file")->required();
  census->add_flag("--compact", o.compact,
                   "Report chance counts without single-outcome "
                   "prescription chance nodes");
  census->add_flag("--json", o.json_summary, "JSON output");

  CLI::App* count = app.add_subcommand("count", "Closed-form size table");
  count->add_option("--chance", o.chance, "C");
  count->add_option("--actions", o.actions, "A");
  count->add_option("--hmin", o.hmin, "First H");
  count->add_option("--hmax", o.hmax, "Last H");
  count->add_flag("--both-private", o.both_private, "Both members private");
  count->add_flag("--exact", o.exact, "Exact integers");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidParams;
  }

  try {
    if (gen->parsed()) return CmdGen(o, out);
    if (convert->parsed()) return CmdConvert(o, out, err);
    if (solve->parsed()) return CmdSolve(o, out);
    if (oracle->parsed()) return CmdOracle(o, out);
    if (verify->parsed()) return CmdVerify(o, out, err);
    if (census->parsed()) return CmdCensus(o, out);
    if (count->parsed()) return CmdCount(o, out);
  } catch (const GameError& e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitInvalidParams;
}

}  // namespace pubteam
