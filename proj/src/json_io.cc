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

#include "pubteam/json_io.h"

#include <cstdio>
#include <fstream>
#include <map>
#include <unordered_map>

#include "pubteam/info.h"

namespace pubteam {
namespace {

const char* KindName(NodeKind kind) {
  switch (kind) {
    case NodeKind::kDecision: return "decision";
    case NodeKind::kChance: return "chance";
    case NodeKind::kTerminal: return "terminal";
  }
  return "unknown";
}

Role ParseRole(const std::string& s) {
  if (s == "team") return Role::kTeam;
  if (s == "opponent") return Role::kOpponent;
  if (s == "coordinator") return Role::kCoordinator;
  throw GameError(ErrorCode::kParse, "unknown role " + s);
}

OriginKind ParseOriginKind(const std::string& s) {
  for (OriginKind k :
       {OriginKind::kChance, OriginKind::kOpponent, OriginKind::kTerminal,
        OriginKind::kCoordinator, OriginKind::kPrescriptionChance}) {
    if (s == OriginKindName(k)) return k;
  }
  throw GameError(ErrorCode::kParse, "unknown origin kind " + s);
}

template <typename T>
T Get(const json& j, const char* field) {
  if (!j.contains(field)) {
    throw GameError(ErrorCode::kParse, std::string("missing field ") + field);
  }
  try {
    return j.at(field).get<T>();
  } catch (const json::exception& e) {
    throw GameError(ErrorCode::kParse, std::string(field) + ": " + e.what());
  }
}

}  // namespace

json GameToJson(const Game& game) {
  json j;
  j["name"] = game.name;
  json players = json::array();
  for (const PlayerInfo& p : game.players) {
    players.push_back({{"name", p.name}, {"role", RoleName(p.role)}});
  }
  j["players"] = players;
  j["root"] = game.root;
  json nodes = json::array();
  for (int n = 0; n < game.num_nodes(); ++n) {
    const Node& nd = game.nodes[n];
    json jn;
    jn["id"] = n;
    jn["kind"] = KindName(nd.kind);
    if (nd.kind == NodeKind::kTerminal) {
      jn["team_utility"] = nd.utility;
    } else {
      if (nd.kind == NodeKind::kDecision) {
        jn["player"] = game.players[nd.player].name;
        if (game.HasOverride(n)) {
          jn["infoset"] = game.override_keys[game.infoset_override[n]];
        }
      }
      json edges = json::array();
      for (const Edge& e : game.Edges(n)) {
        json je;
        je["label"] = game.EdgeLabel(e);
        je["child"] = e.child;
        if (nd.kind == NodeKind::kChance) je["prob"] = e.prob;
        json vis = json::object();
        for (int p = 0; p < game.num_players(); ++p) {
          vis[game.players[p].name] =
              (e.seen & (SeenMask{1} << p)) ? "seen" : "unseen";
        }
        je["vis"] = vis;
        edges.push_back(je);
      }
      jn["edges"] = edges;
    }
    nodes.push_back(jn);
  }
  j["nodes"] = nodes;
  return j;
}

Game GameFromJson(const json& j) {
  if (!j.is_object()) throw GameError(ErrorCode::kParse, "not an object");
  Game game;
  game.name = j.value("name", std::string("game"));
  for (const json& p : Get<json>(j, "players")) {
    if (p.is_string()) {
      throw GameError(ErrorCode::kParse,
                      "players must be objects with name and role");
    }
    game.players.push_back(
        {Get<std::string>(p, "name"), ParseRole(Get<std::string>(p, "role"))});
  }
  if (game.players.size() > kMaxPlayers) {
    throw GameError(ErrorCode::kInvalidArgument, "too many players");
  }
  std::unordered_map<std::string, int> player_index;
  for (int p = 0; p < game.num_players(); ++p) {
    player_index[game.players[p].name] = p;
  }
  const json& jnodes = Get<json>(j, "nodes");
  std::unordered_map<long long, int> index;
  for (const json& jn : jnodes) {
    long long id = Get<long long>(jn, "id");
    if (!index.try_emplace(id, static_cast<int>(index.size())).second) {
      throw GameError(ErrorCode::kDuplicateNodeId, std::to_string(id));
    }
  }
  auto resolve = [&](long long id) {
    auto it = index.find(id);
    if (it == index.end()) {
      throw GameError(ErrorCode::kParse,
                      "reference to unknown node " + std::to_string(id));
    }
    return it->second;
  };
  std::unordered_map<std::string, int> labels;
  std::unordered_map<std::string, int> keys;
  auto label_id = [&](const std::string& s) {
    auto [it, inserted] = labels.try_emplace(s, game.labels.size());
    if (inserted) game.labels.push_back(s);
    return it->second;
  };
  game.nodes.resize(jnodes.size());
  std::vector<std::vector<Edge>> edges(jnodes.size());
  bool any_override = false;
  std::vector<int> overrides(jnodes.size(), -1);
  for (const json& jn : jnodes) {
    const int n = resolve(Get<long long>(jn, "id"));
    Node& nd = game.nodes[n];
    const std::string kind = Get<std::string>(jn, "kind");
    if (kind == "terminal") {
      nd.kind = NodeKind::kTerminal;
      nd.utility = Get<double>(jn, "team_utility");
      continue;
    }
    if (kind == "chance") {
      nd.kind = NodeKind::kChance;
    } else if (kind == "decision") {
      nd.kind = NodeKind::kDecision;
      const std::string player = Get<std::string>(jn, "player");
      auto it = player_index.find(player);
      if (it == player_index.end()) {
        throw GameError(ErrorCode::kUnknownPlayer, player);
      }
      nd.player = it->second;
      if (jn.contains("infoset")) {
        const std::string key = Get<std::string>(jn, "infoset");
        auto [kit, inserted] = keys.try_emplace(key, game.override_keys.size());
        if (inserted) game.override_keys.push_back(key);
        overrides[n] = kit->second;
        any_override = true;
      }
    } else {
      throw GameError(ErrorCode::kParse, "unknown node kind " + kind);
    }
    for (const json& je : Get<json>(jn, "edges")) {
      Edge e;
      e.label = label_id(Get<std::string>(je, "label"));
      e.child = resolve(Get<long long>(je, "child"));
      if (nd.kind == NodeKind::kChance) e.prob = Get<double>(je, "prob");
      const json& vis = Get<json>(je, "vis");
      for (auto it = vis.begin(); it != vis.end(); ++it) {
        auto p = player_index.find(it.key());
        if (p == player_index.end()) {
          throw GameError(ErrorCode::kUnknownPlayer, it.key());
        }
        const std::string v = it.value().get<std::string>();
        if (v == "seen") {
          e.seen |= SeenMask{1} << p->second;
        } else if (v != "unseen") {
          throw GameError(ErrorCode::kParse, "visibility must be seen/unseen");
        }
      }
      for (const PlayerInfo& p : game.players) {
        if (!vis.contains(p.name)) {
          throw GameError(ErrorCode::kMissingVisibilityEntry,
                          "edge " + game.Label(e.label) + " lacks " + p.name);
        }
      }
      edges[n].push_back(e);
    }
  }
  for (std::size_t n = 0; n < edges.size(); ++n) {
    game.nodes[n].first_edge = static_cast<int>(game.edges.size());
    game.nodes[n].num_edges = static_cast<int>(edges[n].size());
    game.edges.insert(game.edges.end(), edges[n].begin(), edges[n].end());
  }
  if (any_override) game.infoset_override = std::move(overrides);
  game.root = resolve(Get<long long>(j, "root"));
  ValidateAndLink(game);
  return game;
}

json ConvertedToJson(const ConvertedGame& cg) {
  json j = GameToJson(cg.game);
  Information info(cg.source, /*use_overrides=*/false);
  for (int n = 0; n < cg.game.num_nodes(); ++n) {
    const NodeOrigin& o = cg.origin[n];
    if (o.kind != OriginKind::kCoordinator) continue;
    const std::vector<int>& domain = cg.domains[o.domain];
    json& edges = j["nodes"][n]["edges"];
    for (int k = 0; k < cg.game.nodes[n].num_edges; ++k) {
      std::vector<int> actions = cg.Prescription(info, n, k);
      json presc = json::array();
      for (std::size_t i = 0; i < domain.size(); ++i) {
        int member_node = info.Members(o.member, domain[i]).front();
        presc.push_back(
            {{"infoset", info.Key(o.member, domain[i])},
             {"action",
              cg.source.EdgeLabel(cg.source.Edges(member_node)[actions[i]])}});
      }
      edges[k]["prescription"] = presc;
    }
  }
  std::vector<std::vector<int>> excluded = ExcludedInfosets(cg, info);
  json origin;
  origin["source_fingerprint"] = FingerprintHex(cg.source_fingerprint);
  origin["mode"] = ConversionModeName(cg.mode);
  origin["safe_ir"] = cg.safe_ir_applied;
  origin["turn_taking_applied"] = cg.turn_taking_applied;
  origin["source"] = GameToJson(cg.source);
  json nodes = json::array();
  for (int n = 0; n < cg.game.num_nodes(); ++n) {
    const NodeOrigin& o = cg.origin[n];
    json jn;
    jn["id"] = n;
    jn["kind"] = OriginKindName(o.kind);
    jn["source"] = o.source;
    if (o.member >= 0) jn["member"] = cg.source.players[o.member].name;
    if (o.kind == OriginKind::kCoordinator) {
      json domain = json::array();
      for (int i : cg.domains[o.domain]) domain.push_back(info.Key(o.member, i));
      jn["domain"] = domain;
      json ex = json::array();
      for (int i : excluded[n]) ex.push_back(info.Key(o.member, i));
      jn["excluded"] = ex;
      if (o.belief >= 0) {
        json belief = json::array();
        for (const World& w : cg.beliefs[o.belief]) {
          belief.push_back({w.node, w.weight});
        }
        jn["belief"] = belief;
      }
      if (o.safe_ir_key >= 0) jn["safe_ir_key"] = cg.safe_ir_keys[o.safe_ir_key];
    }
    nodes.push_back(jn);
  }
  origin["nodes"] = nodes;
  j["origin"] = origin;
  return j;
}

bool HasOrigin(const json& j) { return j.is_object() && j.contains("origin"); }

ConvertedGame ConvertedFromJson(const json& j) {
  if (!HasOrigin(j)) {
    throw GameError(ErrorCode::kOriginMismatch, "no origin section");
  }
  ConvertedGame cg;
  cg.game = GameFromJson(j);
  const json& origin = j.at("origin");
  cg.source = GameFromJson(Get<json>(origin, "source"));
  cg.source_fingerprint =
      std::stoull(Get<std::string>(origin, "source_fingerprint"), nullptr, 16);
  cg.mode = ParseConversionMode(Get<std::string>(origin, "mode"));
  cg.safe_ir_applied = origin.value("safe_ir", false);
  cg.turn_taking_applied = origin.value("turn_taking_applied", false);
  Information info(cg.source, /*use_overrides=*/false);
  const json& nodes = Get<json>(origin, "nodes");
  if (static_cast<int>(nodes.size()) != cg.game.num_nodes()) {
    throw GameError(ErrorCode::kOriginMismatch, "origin node count");
  }
  cg.origin.resize(cg.game.num_nodes());
  std::map<std::vector<int>, int> domain_ids;
  for (const json& jn : nodes) {
    int n = Get<int>(jn, "id");
    if (n < 0 || n >= cg.game.num_nodes()) {
      throw GameError(ErrorCode::kOriginMismatch, "origin node id");
    }
    NodeOrigin& o = cg.origin[n];
    o.kind = ParseOriginKind(Get<std::string>(jn, "kind"));
    o.source = Get<int>(jn, "source");
    if (jn.contains("member")) {
      o.member = cg.source.FindPlayer(Get<std::string>(jn, "member"));
      if (o.member < 0) throw GameError(ErrorCode::kOriginMismatch, "member");
    }
    if (o.kind != OriginKind::kCoordinator) continue;
    std::vector<int> domain;
    for (const json& key : Get<json>(jn, "domain")) {
      int i = info.FindInfoset(o.member, key.get<std::string>());
      if (i < 0) {
        throw GameError(ErrorCode::kOriginMismatch,
                        "unknown infoset " + key.get<std::string>());
      }
      domain.push_back(i);
    }
    auto [it, inserted] = domain_ids.try_emplace(domain, cg.domains.size());
    if (inserted) cg.domains.push_back(domain);
    o.domain = it->second;
    if (jn.contains("belief")) {
      std::vector<World> worlds;
      for (const json& w : jn.at("belief")) {
        worlds.push_back({w.at(0).get<int>(), w.at(1).get<double>()});
      }
      o.belief = static_cast<int>(cg.beliefs.size());
      cg.beliefs.push_back(std::move(worlds));
    }
    if (jn.contains("safe_ir_key")) {
      o.safe_ir_key = static_cast<int>(cg.safe_ir_keys.size());
      cg.safe_ir_keys.push_back(Get<std::string>(jn, "safe_ir_key"));
    }
  }
  return cg;
}

std::uint64_t Fingerprint(const Game& game) {
  const std::string text = GameToJson(game).dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string FingerprintHex(std::uint64_t fingerprint) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fingerprint));
  return buf;
}

json LoadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GameError(ErrorCode::kIo, "cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw GameError(ErrorCode::kParse, path + ": " + e.what());
  }
}

void SaveJsonFile(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw GameError(ErrorCode::kIo, "cannot write " + path);
  out << j.dump() << '\n';
  if (!out) throw GameError(ErrorCode::kIo, "write failed for " + path);
}

}  // namespace pubteam
