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

#include "pubteam/conversion.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "pubteam/json_io.h"

namespace pubteam {

const char* ConversionModeName(ConversionMode mode) {
  switch (mode) {
    case ConversionMode::kBasic: return "basic";
    case ConversionMode::kPruned: return "pruned";
    case ConversionMode::kFolded: return "folded";
  }
  return "unknown";
}

ConversionMode ParseConversionMode(const std::string& name) {
  if (name == "basic") return ConversionMode::kBasic;
  if (name == "pruned") return ConversionMode::kPruned;
  if (name == "folded") return ConversionMode::kFolded;
  throw GameError(ErrorCode::kInvalidArgument, "unknown mode " + name);
}

const char* OriginKindName(OriginKind kind) {
  switch (kind) {
    case OriginKind::kChance: return "chance";
    case OriginKind::kOpponent: return "opponent";
    case OriginKind::kTerminal: return "terminal";
    case OriginKind::kCoordinator: return "coordinator";
    case OriginKind::kPrescriptionChance: return "prescription_chance";
  }
  return "unknown";
}

std::vector<int> ConvertedGame::Prescription(const Information& source_info,
                                             int node, int k) const {
  const NodeOrigin& o = origin[node];
  if (o.kind != OriginKind::kCoordinator) {
    throw GameError(ErrorCode::kIllegalPrescription, "not a coordinator node");
  }
  const std::vector<int>& domain = domains[o.domain];
  std::vector<int> actions(domain.size());
  for (int i = static_cast<int>(domain.size()) - 1; i >= 0; --i) {
    int radix = source_info.NumActions(o.member, domain[i]);
    actions[i] = k % radix;
    k /= radix;
  }
  return actions;
}

int ConvertedGame::PrescriptionIndex(const Information& source_info, int node,
                                     const std::vector<int>& actions) const {
  const NodeOrigin& o = origin[node];
  const std::vector<int>& domain = domains[o.domain];
  if (actions.size() != domain.size()) {
    throw GameError(ErrorCode::kIllegalPrescription, "domain size");
  }
  int k = 0;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    int radix = source_info.NumActions(o.member, domain[i]);
    if (actions[i] < 0 || actions[i] >= radix) {
      throw GameError(ErrorCode::kIllegalAction, "action out of range");
    }
    k = k * radix + actions[i];
  }
  return k;
}

Game PrepareForConversion(const Game& game, bool* turn_taking_applied,
                          bool force_noop_turns) {
  if (game.PlayersWithRole(Role::kTeam).empty() || game.Opponent() < 0) {
    throw GameError(ErrorCode::kNotATeamGame,
                    "need team members and one opponent");
  }
  const bool transformed = force_noop_turns || !IsPublicTurnTaking(game);
  Game prepared = TeamPerfectRecallRefinement(game);
  if (transformed) {
    prepared = InsertNoopTurns(prepared, prepared.TeamMask());
  }
  PerfectRecallReport report = ValidatePerfectRecall(prepared);
  if (!report.ok()) {
    const PerfectRecallViolation& v = report.violations.front();
    throw GameError(ErrorCode::kImperfectRecallInput,
                    prepared.players[v.player].name + ": " + v.reason);
  }
  if (turn_taking_applied != nullptr) *turn_taking_applied = transformed;
  return prepared;
}

namespace {

constexpr long long kMaxPrescriptions = 1LL << 22;
constexpr SeenMask kT = 1;
constexpr SeenMask kO = 2;

class Converter {
 public:
  Converter(ConvertedGame& cg)
      : cg_(cg),
        src_(cg.source),
        info_(cg.source),
        out_(cg.source.name + "-" + ConversionModeName(cg.mode),
             {{"t", Role::kCoordinator},
              {cg.source.players[cg.source.Opponent()].name,
               Role::kOpponent}}) {
    mode_ = cg.mode;
    team_mask_ = src_.TeamMask();
    opp_bit_ = SeenMask{1} << src_.Opponent();
    Precompute();
  }

  void Run() {
    std::vector<World> worlds = {{src_.root, 1.0}};
    std::vector<int> cw;
    if (mode_ != ConversionMode::kBasic) cw.push_back(src_.root);
    int root = Build(std::move(worlds), std::move(cw));
    cg_.game = out_.Build(root);
    cg_.origin = std::move(origin_);
  }

 private:
  struct Step {
    int label = -1;  // Public label step when >= 0.
    int member = -1;
    int domain = -1;
    std::vector<int> gamma;
    int played = -1;
  };

  static Step LabelStep(int label) {
    Step s;
    s.label = label;
    return s;
  }

  bool TeamPublic(const Edge& e) const {
    return (e.seen & team_mask_) == team_mask_;
  }

  void Precompute() {
    const int n = src_.num_nodes();
    foldable_.assign(n, 0);
    team_pub_.assign(n, 0);
    prev_team_dec_.assign(n, -1);
    for (int node : src_.PreOrder()) {
      const Node& nd = src_.nodes[node];
      if (nd.kind == NodeKind::kChance) {
        bool fold = true;
        for (const Edge& e : src_.Edges(node)) {
          fold = fold && !(e.seen & opp_bit_) && !TeamPublic(e);
        }
        foldable_[node] = fold;
      }
      bool team_dec = nd.kind == NodeKind::kDecision &&
                      src_.players[nd.player].role == Role::kTeam;
      for (const Edge& e : src_.Edges(node)) {
        team_pub_[e.child] =
            TeamPublic(e) ? pub_trie_.Extend(team_pub_[node], e.label)
                          : team_pub_[node];
        prev_team_dec_[e.child] = team_dec ? node : prev_team_dec_[node];
      }
    }
    if (mode_ == ConversionMode::kBasic) {
      for (int p : src_.PlayersWithRole(Role::kTeam)) {
        for (int i = 0; i < info_.NumInfosets(p); ++i) {
          int node = info_.Members(p, i).front();
          std::vector<int>& d = public_domain_[{p, team_pub_[node]}];
          d.push_back(i);
        }
        const std::vector<int>& rank = info_.CanonicalRank(p);
        for (auto& [key, d] : public_domain_) {
          if (key.first != p) continue;
          std::sort(d.begin(), d.end(),
                    [&](int a, int b) { return rank[a] < rank[b]; });
        }
      }
    }
  }

  int AddOrigin(int id, NodeOrigin o) {
    if (static_cast<int>(origin_.size()) <= id) origin_.resize(id + 1);
    origin_[id] = o;
    return id;
  }

  int Intern(const std::vector<int>& domain) {
    auto [it, inserted] = domain_ids_.try_emplace(domain, cg_.domains.size());
    if (inserted) cg_.domains.push_back(domain);
    return it->second;
  }

  void CheckAligned(const std::vector<World>& worlds,
                    const std::vector<int>& cw) const {
    const Node& ref = src_.nodes[worlds[0].node];
    auto same = [&](int n) {
      const Node& nd = src_.nodes[n];
      return nd.kind == ref.kind && nd.player == ref.player;
    };
    for (const World& w : worlds) {
      if (!same(w.node)) {
        throw GameError(ErrorCode::kNotPublicTurnTaking,
                        "folded histories reach different node kinds");
      }
    }
    for (int n : cw) {
      if (!same(n)) {
        throw GameError(ErrorCode::kNotPublicTurnTaking,
                        "consistent histories reach different node kinds");
      }
    }
  }

  int Build(std::vector<World> worlds, std::vector<int> cw) {
    if (mode_ == ConversionMode::kFolded) {
      while (src_.IsChance(worlds[0].node) && foldable_[worlds[0].node]) {
        std::vector<World> next;
        for (const World& w : worlds) {
          if (!src_.IsChance(w.node) || !foldable_[w.node]) {
            throw GameError(ErrorCode::kNotPublicTurnTaking,
                            "misaligned private chance");
          }
          for (const Edge& e : src_.Edges(w.node)) {
            if (e.prob > 0.0) next.push_back({e.child, w.weight * e.prob});
          }
        }
        std::vector<int> next_cw;
        for (int n : cw) {
          for (const Edge& e : src_.Edges(n)) next_cw.push_back(e.child);
        }
        worlds = std::move(next);
        cw = std::move(next_cw);
      }
    }
    CheckAligned(worlds, cw);
    const Node& ref = src_.nodes[worlds[0].node];
    switch (ref.kind) {
      case NodeKind::kTerminal: {
        double u = 0.0;
        for (const World& w : worlds) u += w.weight * src_.nodes[w.node].utility;
        return AddOrigin(out_.AddTerminal(u),
                         {OriginKind::kTerminal, worlds[0].node});
      }
      case NodeKind::kChance:
        return BuildChance(worlds, cw);
      case NodeKind::kDecision:
        if (src_.players[ref.player].role == Role::kOpponent) {
          return BuildOpponent(worlds, cw);
        }
        return BuildTeam(worlds, cw);
    }
    return -1;
  }

  std::vector<int> AdvanceConsistent(const std::vector<int>& cw, int label,
                                     bool filter) const {
    std::vector<int> next;
    for (int n : cw) {
      for (const Edge& e : src_.Edges(n)) {
        if (!filter || e.label == label) next.push_back(e.child);
      }
    }
    return next;
  }

  int BuildChance(const std::vector<World>& worlds, const std::vector<int>& cw) {
    struct Outcome {
      int label;
      SeenMask seen;
      double mass = 0.0;
      std::vector<World> children;
    };
    std::vector<Outcome> outcomes;
    std::unordered_map<int, int> by_label;
    for (const World& w : worlds) {
      for (const Edge& e : src_.Edges(w.node)) {
        double m = w.weight * e.prob;
        if (m <= 0.0) continue;
        auto [it, inserted] = by_label.try_emplace(e.label, outcomes.size());
        if (inserted) outcomes.push_back({e.label, e.seen, 0.0, {}});
        Outcome& o = outcomes[it->second];
        o.mass += m;
        o.children.push_back({e.child, m});
      }
    }
    std::vector<GameBuilder::EdgeSpec> edges;
    for (Outcome& o : outcomes) {
      for (World& w : o.children) w.weight /= o.mass;
      const bool pub = (o.seen & team_mask_) == team_mask_;
      std::vector<int> next_cw = AdvanceConsistent(cw, o.label, pub);
      if (pub) steps_.push_back(LabelStep(o.label));
      int child = Build(std::move(o.children), std::move(next_cw));
      if (pub) steps_.pop_back();
      edges.push_back({out_.Label(src_.Label(o.label)), child, o.mass,
                       (pub ? kT : 0) | ((o.seen & opp_bit_) ? kO : 0)});
    }
    NormalizeMasses(edges);
    return AddOrigin(out_.AddChance(edges),
                     {OriginKind::kChance, worlds[0].node});
  }

  // Masses are sums of conditional weights; renormalize against rounding.
  static void NormalizeMasses(std::vector<GameBuilder::EdgeSpec>& edges) {
    double total = 0.0;
    for (const auto& e : edges) total += e.prob;
    for (auto& e : edges) e.prob /= total;
  }

  int BuildOpponent(const std::vector<World>& worlds,
                    const std::vector<int>& cw) {
    const int ref = worlds[0].node;
    std::vector<GameBuilder::EdgeSpec> edges;
    const int num = src_.nodes[ref].num_edges;
    for (int k = 0; k < num; ++k) {
      const Edge& re = src_.Edges(ref)[k];
      std::vector<World> next;
      for (const World& w : worlds) {
        const Node& nd = src_.nodes[w.node];
        if (nd.num_edges != num || src_.Edges(w.node)[k].label != re.label) {
          throw GameError(ErrorCode::kActionMismatchWithinInfoset,
                          "opponent actions differ across folded histories");
        }
        next.push_back({src_.Edges(w.node)[k].child, w.weight});
      }
      const bool pub = TeamPublic(re);
      std::vector<int> next_cw = AdvanceConsistent(cw, re.label, pub);
      if (pub) steps_.push_back(LabelStep(re.label));
      int child = Build(std::move(next), std::move(next_cw));
      if (pub) steps_.pop_back();
      edges.push_back({out_.Label(src_.EdgeLabel(re)), child, 0.0,
                       (pub ? kT : 0) | kO});
    }
    return AddOrigin(out_.AddDecision(1, edges),
                     {OriginKind::kOpponent, ref});
  }

  // Coordinator nodes with the same observation history form one infoset, so
  // they must prescribe to the same member over the same domain.
  void CheckCoordinatorView(int member, int domain_id) {
    std::string key;
    for (const Step& s : steps_) {
      if (s.label >= 0) {
        key += "L" + std::to_string(s.label) + ";";
        continue;
      }
      key += "P" + std::to_string(s.member) + "," + std::to_string(s.domain);
      for (int g : s.gamma) key += "," + std::to_string(g);
      key += ">" + std::to_string(s.played) + ";";
    }
    auto [it, inserted] =
        coordinator_views_.try_emplace(key, member, domain_id);
    if (!inserted && it->second != std::pair(member, domain_id)) {
      throw GameError(ErrorCode::kNotPublicTurnTaking,
                      "coordinator cannot tell which member acts");
    }
  }

  std::vector<int> Domain(int member, const std::vector<World>& worlds,
                          const std::vector<int>& cw) const {
    if (mode_ == ConversionMode::kBasic) {
      return public_domain_.at({member, team_pub_[worlds[0].node]});
    }
    std::vector<int> domain;
    for (int n : cw) domain.push_back(info_.InfosetOf(n));
    const std::vector<int>& rank = info_.CanonicalRank(member);
    std::sort(domain.begin(), domain.end(),
              [&](int a, int b) { return rank[a] < rank[b]; });
    domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
    return domain;
  }

  std::string SafeKey(int member, int domain_id, const std::vector<int>& cw) {
    std::unordered_set<long long> alive;
    std::unordered_set<int> visited;
    for (int n : cw) {
      // Stop at the first decision node already walked: its ancestors are in.
      for (int m = prev_team_dec_[n]; m >= 0 && visited.insert(m).second;
           m = prev_team_dec_[m]) {
        alive.insert(static_cast<long long>(src_.nodes[m].player) << 32 |
                     info_.InfosetOf(m));
      }
    }
    std::string key = "t:";
    for (const Step& s : steps_) {
      if (s.label >= 0) {
        key += src_.Label(s.label);
        key += '/';
        continue;
      }
      key += '{';
      const std::vector<int>& domain = cg_.domains[s.domain];
      bool first = true;
      for (std::size_t i = 0; i < domain.size(); ++i) {
        long long code = static_cast<long long>(s.member) << 32 | domain[i];
        if (!alive.count(code)) continue;
        if (!first) key += ',';
        key += std::to_string(domain[i]) + "=" + std::to_string(s.gamma[i]);
        first = false;
      }
      key += "}>" + src_.Label(s.played) + "/";
    }
    key += "|" + src_.players[member].name + "#" + std::to_string(domain_id);
    return key;
  }

  int BuildTeam(const std::vector<World>& worlds, const std::vector<int>& cw) {
    const int ref = worlds[0].node;
    const int member = src_.nodes[ref].player;
    std::vector<int> domain = Domain(member, worlds, cw);
    const int domain_id = Intern(domain);
    CheckCoordinatorView(member, domain_id);
    std::unordered_map<int, int> pos;
    long long count = 1;
    std::vector<int> radix(domain.size());
    for (std::size_t i = 0; i < domain.size(); ++i) {
      pos[domain[i]] = static_cast<int>(i);
      radix[i] = info_.NumActions(member, domain[i]);
      count *= radix[i];
      if (count > kMaxPrescriptions) {
        throw GameError(ErrorCode::kGameTooLarge, "too many prescriptions");
      }
    }
    std::vector<int> world_pos, cw_pos;
    for (const World& w : worlds) {
      auto it = pos.find(info_.InfosetOf(w.node));
      if (it == pos.end()) {
        throw GameError(ErrorCode::kIllegalPrescription,
                        "history outside the prescription domain");
      }
      world_pos.push_back(it->second);
    }
    for (int n : cw) cw_pos.push_back(pos.at(info_.InfosetOf(n)));

    NodeOrigin origin{OriginKind::kCoordinator, ref, member, domain_id};
    if (mode_ == ConversionMode::kFolded) {
      origin.belief = static_cast<int>(cg_.beliefs.size());
      cg_.beliefs.push_back(worlds);
    }
    if (mode_ != ConversionMode::kBasic) {
      origin.safe_ir_key = static_cast<int>(cg_.safe_ir_keys.size());
      cg_.safe_ir_keys.push_back(SafeKey(member, domain_id, cw));
    }

    std::vector<GameBuilder::EdgeSpec> coord_edges;
    std::vector<int> gamma(domain.size(), 0);
    for (long long g = 0; g < count; ++g) {
      // Worlds are grouped by the label they play, so members with different
      // action sets (inserted noop nodes) share one chance node.
      std::vector<int> labels;
      std::vector<double> mass;
      std::vector<int> edge_index;  // Played edge position, for ordering.
      std::vector<int> world_group(worlds.size());
      for (std::size_t i = 0; i < worlds.size(); ++i) {
        const int label = src_.Edges(worlds[i].node)[gamma[world_pos[i]]].label;
        auto it = std::find(labels.begin(), labels.end(), label);
        world_group[i] = static_cast<int>(it - labels.begin());
        if (it == labels.end()) {
          labels.push_back(label);
          mass.push_back(0.0);
          edge_index.push_back(gamma[world_pos[i]]);
        }
        mass[world_group[i]] += worlds[i].weight;
      }
      std::vector<int> order(labels.size());
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](int x, int y) {
        return std::pair(edge_index[x], labels[x]) <
               std::pair(edge_index[y], labels[y]);
      });
      std::vector<GameBuilder::EdgeSpec> chance_edges;
      for (int group : order) {
        std::vector<World> next;
        const Edge* played = nullptr;
        for (std::size_t i = 0; i < worlds.size(); ++i) {
          if (world_group[i] != group) continue;
          const Edge& e = src_.Edges(worlds[i].node)[gamma[world_pos[i]]];
          if (played == nullptr) played = &e;
          next.push_back({e.child, worlds[i].weight / mass[group]});
        }
        std::vector<int> next_cw;
        for (std::size_t i = 0; i < cw.size(); ++i) {
          const Edge& e = src_.Edges(cw[i])[gamma[cw_pos[i]]];
          if (e.label == labels[group]) next_cw.push_back(e.child);
        }
        steps_.push_back({-1, member, domain_id, gamma, labels[group]});
        int child = Build(std::move(next), std::move(next_cw));
        steps_.pop_back();
        chance_edges.push_back({out_.Label(src_.Label(labels[group])), child,
                                mass[group],
                                kT | ((played->seen & opp_bit_) ? kO : 0)});
      }
      NormalizeMasses(chance_edges);
      int chance = AddOrigin(out_.AddChance(chance_edges),
                             {OriginKind::kPrescriptionChance, ref, member,
                              domain_id});
      std::string label = "(";
      for (std::size_t i = 0; i < domain.size(); ++i) {
        if (i) label += ',';
        label += src_.EdgeLabel(
            src_.Edges(info_.Members(member, domain[i]).front())[gamma[i]]);
      }
      label += ')';
      coord_edges.push_back({out_.Label(label), chance, 0.0, kT});
      // Advance the mixed-radix counter; the first domain entry is the most
      // significant digit.
      for (int i = static_cast<int>(domain.size()) - 1; i >= 0; --i) {
        if (++gamma[i] < radix[i]) break;
        gamma[i] = 0;
      }
    }
    return AddOrigin(out_.AddDecision(0, coord_edges), origin);
  }

  ConvertedGame& cg_;
  const Game& src_;
  Information info_;
  GameBuilder out_;
  ConversionMode mode_;
  SeenMask team_mask_ = 0;
  SeenMask opp_bit_ = 0;
  std::vector<char> foldable_;
  SequenceTrie pub_trie_;
  std::vector<int> team_pub_;
  std::vector<int> prev_team_dec_;
  std::map<std::pair<int, int>, std::vector<int>> public_domain_;
  std::map<std::vector<int>, int> domain_ids_;
  std::vector<NodeOrigin> origin_;
  std::vector<Step> steps_;
  std::unordered_map<std::string, std::pair<int, int>> coordinator_views_;
};

}  // namespace

ConvertedGame Convert(const Game& game, ConversionMode mode) {
  ConvertedGame cg;
  cg.mode = mode;
  cg.source_fingerprint = Fingerprint(game);
  cg.source = PrepareForConversion(game, &cg.turn_taking_applied);
  try {
    Converter(cg).Run();
  } catch (const GameError& e) {
    // The actor order can still differ between histories the team cannot
    // tell apart; the noop construction removes that as well.
    if (e.code() != ErrorCode::kNotPublicTurnTaking || cg.turn_taking_applied) {
      throw;
    }
    ConvertedGame retry;
    retry.mode = mode;
    retry.source_fingerprint = cg.source_fingerprint;
    retry.source = PrepareForConversion(game, &retry.turn_taking_applied,
                                        /*force_noop_turns=*/true);
    Converter(retry).Run();
    return retry;
  }
  return cg;
}

ConvertedGame ApplySafeImperfectRecall(const ConvertedGame& cg) {
  if (cg.mode == ConversionMode::kBasic || cg.safe_ir_keys.empty()) {
    throw GameError(ErrorCode::kExclusionDataMissing,
                    "safe imperfect recall needs a pruned or folded game");
  }
  ConvertedGame out = cg;
  out.game.infoset_override.assign(out.game.num_nodes(), -1);
  out.game.override_keys = cg.safe_ir_keys;
  for (int n = 0; n < out.game.num_nodes(); ++n) {
    if (cg.origin[n].kind == OriginKind::kCoordinator) {
      out.game.infoset_override[n] = cg.origin[n].safe_ir_key;
    }
  }
  // Several nodes may share a key string; collapse to one id per string.
  std::unordered_map<std::string, int> ids;
  std::vector<std::string> keys;
  for (int n = 0; n < out.game.num_nodes(); ++n) {
    int& o = out.game.infoset_override[n];
    if (o < 0) continue;
    auto [it, inserted] = ids.try_emplace(cg.safe_ir_keys[o], keys.size());
    if (inserted) keys.push_back(cg.safe_ir_keys[o]);
    o = it->second;
  }
  out.game.override_keys = std::move(keys);
  out.safe_ir_applied = true;
  return out;
}

std::vector<std::vector<int>> ExcludedInfosets(const ConvertedGame& cg,
                                               const Information& source_info) {
  std::vector<int> team = cg.source.PlayersWithRole(Role::kTeam);
  PublicStates states = ComputePublicStates(cg.source, team);
  std::map<std::pair<int, int>, std::vector<int>> by_state;
  for (int p : team) {
    for (int i = 0; i < source_info.NumInfosets(p); ++i) {
      int node = source_info.Members(p, i).front();
      by_state[{p, states.state_of[node]}].push_back(i);
    }
  }
  std::vector<std::vector<int>> out(cg.game.num_nodes());
  for (int n = 0; n < cg.game.num_nodes(); ++n) {
    const NodeOrigin& o = cg.origin[n];
    if (o.kind != OriginKind::kCoordinator) continue;
    const std::vector<int>& all =
        by_state[{o.member, states.state_of[o.source]}];
    const std::vector<int>& domain = cg.domains[o.domain];
    for (int i : all) {
      if (std::find(domain.begin(), domain.end(), i) == domain.end()) {
        out[n].push_back(i);
      }
    }
  }
  return out;
}

}  // namespace pubteam
