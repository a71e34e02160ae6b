#include "dpgame/serialization.h"

#include <iomanip>
#include <sstream>

namespace dpgame {
namespace {

std::string Fixed(double v, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << v;
  return out.str();
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json PairJson(const EvaluationPair& p) {
  return json{{"a", p.a.index}, {"b", p.b.index}, {"round", p.round},
              {"order_in_round", p.order_in_round}};
}

json TrickRowsJson(const std::vector<TrickRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back(json{{"trick", TrickTagName(r.tag)},
                       {"played", r.played},
                       {"wins", r.wins},
                       {"win_rate", r.win_rate}});
  }
  return out;
}

json SeatJson(const SeatRecord& r) {
  return json{{"wins", r.wins}, {"draws", r.draws}, {"losses", r.losses}};
}

}  // namespace

json ToJson(const GameConfig& config) {
  return json{{"budget", config.budget}, {"usage_limit", config.usage_limit}};
}

GameConfig GameConfigFromJson(const json& j) {
  GameConfig c;
  if (j.is_null()) return c;
  if (!j.is_object()) throw ValidationError("game config must be an object");
  c.budget = j.value("budget", c.budget);
  c.usage_limit = j.value("usage_limit", c.usage_limit);
  c.Validate();
  return c;
}

json ToJson(const Action& action) {
  json j{{"token", action.token.ToString()}, {"region", RegionName(action.region)}};
  if (action.opening_angle) j["opening_angle"] = *action.opening_angle;
  return j;
}

Action ActionFromJson(const json& j, const Catalog& catalog, Player role) {
  if (!j.is_object()) throw ValidationError("action must be an object");
  if (!j.contains("token") || !j["token"].is_string()) {
    throw ValidationError("action: missing string field 'token'");
  }
  if (!j.contains("region") || !j["region"].is_string()) {
    throw ValidationError("action: missing string field 'region'");
  }
  const std::string token = j["token"].get<std::string>();
  Action a;
  // A canonical id keeps its own role so that a wrong-role token is reported
  // as such instead of as an unknown name.
  if (auto id = TokenId::TryParse(token)) {
    a.token = *id;
  } else {
    a.token = catalog.Resolve(role, token);
  }
  a.region = ParseRegion(j["region"].get<std::string>());
  if (j.contains("opening_angle") && !j["opening_angle"].is_null()) {
    if (!j["opening_angle"].is_number_integer()) {
      throw ValidationError("action: opening_angle must be an integer");
    }
    a.opening_angle = j["opening_angle"].get<int>();
  }
  return a;
}

json ToJson(const MoveRecord& move) {
  return json{{"ply", move.ply},
              {"player", PlayerName(move.player)},
              {"action", ToJson(move.action)},
              {"position", move.position.index}};
}

json ToJson(const GameState& state) {
  json cells = json::array();
  for (int i = 1; i <= kNumPositions; ++i) {
    const auto& c = state.cell(Position{i});
    cells.push_back(c ? json{{"player", PlayerName(c->player)}, {"token", c->token.ToString()}}
                      : json(nullptr));
  }
  json cursors = json::object();
  for (Region r : {Region::kInner, Region::kMiddle, Region::kOuter}) {
    auto c = state.ring_cursor(r);
    cursors[std::string(RegionName(r))] = c ? json(*c) : json(nullptr);
  }
  json usage = json::object();
  for (Player p : {Player::kAttacker, Player::kDefender}) {
    for (int i = 1; i <= kTokensPerRole; ++i) {
      const TokenId t{p, i};
      if (state.usage(t) > 0) usage[t.ToString()] = state.usage(t);
    }
  }
  json j{{"cells", cells},
         {"ring_cursor", cursors},
         {"placements",
          {{"Attacker", state.placements(Player::kAttacker)},
           {"Defender", state.placements(Player::kDefender)}}},
         {"usage", usage},
         {"to_move", PlayerName(state.to_move())},
         {"ply", state.ply()},
         {"config", ToJson(state.config())}};
  j["terminal_reason"] = state.terminal_reason()
                             ? json(TerminalReasonName(*state.terminal_reason()))
                             : json(nullptr);
  return j;
}

json ToJson(const Verdict& v) {
  return json{{"winner", v.winner ? json(PlayerName(*v.winner)) : json(nullptr)},
              {"source", v.source == VerdictSource::kJudged ? "Judged" : "Unjudged"},
              {"comment", v.comment}};
}

json ToJson(const ScoreEvent& e) {
  return json{{"pair", PairJson(e.pair)},
              {"kind", ScoreKindName(e.kind)},
              {"attacker_points", e.attacker_points},
              {"defender_points", e.defender_points},
              {"comment", e.comment}};
}

json ToJson(const FinalResult& r) {
  json events = json::array();
  for (const auto& e : r.events) events.push_back(ToJson(e));
  return json{{"events", events},
              {"attacker_total", r.attacker_total},
              {"defender_total", r.defender_total},
              {"outcome", OutcomeName(r.outcome)}};
}

json ToJson(const IterationVerdict& it) {
  return json{{"iteration", it.iteration},
              {"attacker_token", it.attacker_token.ToString()},
              {"defender_token", it.defender_token.ToString()},
              {"verdict", ToJson(it.verdict)},
              {"a_points", it.a_points},
              {"d_points", it.d_points}};
}

json ToJson(const GameReport& r) {
  json iterations = json::array();
  for (const auto& it : r.iterations) iterations.push_back(ToJson(it));
  json per_trick = json::object();
  for (const auto& [tag, c] : r.per_trick) {
    per_trick[std::string(TrickTagName(tag))] = json{{"wins", c.wins}, {"losses", c.losses}};
  }
  return json{{"final", ToJson(r.final)},
              {"iterations", iterations},
              {"awareness_score", r.awareness_score},
              {"intrusion_score", r.intrusion_score},
              {"per_trick", per_trick},
              {"unjudged_count", r.unjudged_count}};
}

json ToJson(const TrickTable& t) {
  return json{{"attacker", TrickRowsJson(t.attacker)}, {"defender", TrickRowsJson(t.defender)}};
}

json ToJson(const TournamentSummary& s) {
  json tokens = json::object();
  for (const auto& [id, t] : s.tokens) {
    tokens[id.ToString()] = json{{"placements", t.placements},
                                 {"matchups", t.matchups},
                                 {"wins", t.wins},
                                 {"win_rate", t.win_rate()}};
  }
  return json{{"games", s.games},
              {"attacker_policy", s.attacker_policy},
              {"defender_policy", s.defender_policy},
              {"attacker_record", SeatJson(s.attacker_record)},
              {"defender_record", SeatJson(s.defender_record)},
              {"attacker_points", s.attacker_points},
              {"defender_points", s.defender_points},
              {"mean_attacker_score", s.mean_attacker_score},
              {"mean_defender_score", s.mean_defender_score},
              {"mean_awareness", s.mean_awareness},
              {"mean_intrusion", s.mean_intrusion},
              {"total_placements", s.total_placements},
              {"tokens", tokens},
              {"tricks", ToJson(s.tricks)}};
}

json ToJson(const MixedStrategy& strategy, Player role) {
  if (strategy.size() == kTokensPerRole) {
    json j = json::object();
    for (int i = 0; i < strategy.size(); ++i) j[TokenId{role, i + 1}.ToString()] = strategy[i];
    return j;
  }
  json j = json::array();
  for (double p : strategy.probabilities()) j.push_back(p);
  return j;
}

json ToJson(const EquilibriumReport& r) {
  return json{{"value", r.value},
              {"exploitability", r.exploitability},
              {"iterations", r.iterations},
              {"attacker_strategy", ToJson(r.attacker_strategy, Player::kAttacker)},
              {"defender_strategy", ToJson(r.defender_strategy, Player::kDefender)}};
}

json ToJson(const HypergameReport& r) {
  return json{{"attacker_strategy", ToJson(r.attacker_strategy, Player::kAttacker)},
              {"defender_strategy", ToJson(r.defender_strategy, Player::kDefender)},
              {"realized_value", r.realized_value},
              {"attacker_regret", r.attacker.regret},
              {"defender_regret", r.defender.regret},
              {"attacker_perceived", ToJson(r.attacker.perceived)},
              {"defender_perceived", ToJson(r.defender.perceived)}};
}

json PsychFactorsJson() {
  json out = json::array();
  for (PsychFactor f : AllPsychFactors()) {
    out.push_back(json{{"name", PsychFactorName(f)}, {"pole", FactorPoleName(PsychFactorPole(f))}});
  }
  return out;
}

std::string EquilibriumCsv(const EquilibriumReport& r) {
  std::ostringstream out;
  out << "token,probability\n";
  auto rows = [&](const MixedStrategy& s, Player role) {
    for (int i = 0; i < s.size(); ++i) {
      const std::string name =
          s.size() == kTokensPerRole ? TokenId{role, i + 1}.ToString()
                                     : std::string(role == Player::kAttacker ? "A" : "D") +
                                           std::to_string(i + 1);
      out << name << ',' << json(s[i]).dump() << '\n';
    }
  };
  rows(r.attacker_strategy, Player::kAttacker);
  rows(r.defender_strategy, Player::kDefender);
  return out.str();
}

std::string TournamentCsv(const TournamentSummary& s) {
  std::ostringstream out;
  out << "token,placements,matchups,wins,win_rate\n";
  for (const auto& [id, t] : s.tokens) {
    out << id.ToString() << ',' << t.placements << ',' << t.matchups << ',' << t.wins << ','
        << json(t.win_rate()).dump() << '\n';
  }
  return out.str();
}

std::string ReportCsv(const GameReport& r, const Catalog& catalog) {
  std::ostringstream out;
  out << "iteration,attacker,defender,a_points,d_points,judge,comment\n";
  for (const auto& it : r.iterations) {
    const std::string judge =
        it.verdict.winner ? std::string(PlayerName(*it.verdict.winner)) : "Unjudged";
    out << it.iteration << ',' << CsvField(catalog.token(it.attacker_token).label) << ','
        << CsvField(catalog.token(it.defender_token).label) << ',' << it.a_points << ','
        << it.d_points << ',' << judge << ',' << CsvField(it.verdict.comment) << '\n';
  }
  return out.str();
}

std::string RenderIterationTable(std::span<const IterationVerdict> iterations,
                                 const Catalog& catalog) {
  std::ostringstream out;
  auto row = [&](const std::string& i, const std::string& a, const std::string& d,
                 const std::string& ap, const std::string& dp, const std::string& judge,
                 const std::string& comment) {
    out << std::left << std::setw(10) << i << std::setw(16) << a << std::setw(20) << d
        << std::setw(4) << ap << std::setw(4) << dp << std::setw(20) << judge << comment
        << '\n';
  };
  row("Iteration", "A", "D", "A%", "D%", "Judge", "Comments");
  int a_sum = 0;
  int d_sum = 0;
  for (const auto& it : iterations) {
    std::string judge = "Unjudged";
    if (it.verdict.winner) judge = std::string(PlayerName(*it.verdict.winner)) + " best move";
    row(std::to_string(it.iteration), catalog.token(it.attacker_token).label,
        catalog.token(it.defender_token).label, std::to_string(it.a_points),
        std::to_string(it.d_points), judge, it.verdict.comment);
    a_sum += it.a_points;
    d_sum += it.d_points;
  }
  row("Total", "", "", std::to_string(a_sum), std::to_string(d_sum), "", "");
  return out.str();
}

std::string RenderTrickTable(const TrickTable& t) {
  std::ostringstream out;
  auto side = [&](const char* title, const std::vector<TrickRow>& rows) {
    out << title << '\n';
    out << std::left << std::setw(26) << "  Trick" << std::setw(8) << "Played" << std::setw(6)
        << "Wins" << "Win rate\n";
    for (const auto& r : rows) {
      out << "  " << std::left << std::setw(24) << TrickTagName(r.tag) << std::setw(8)
          << r.played << std::setw(6) << r.wins << Fixed(100.0 * r.win_rate, 1) << "%\n";
    }
  };
  side("Attacker tricks", t.attacker);
  side("Defender tricks", t.defender);
  return out.str();
}

std::string RenderBoard(const GameState& state) {
  std::ostringstream out;
  auto cell = [&](Position p) {
    const auto& c = state.cell(p);
    return c ? c->token.ToString() : std::string(".");
  };
  out << std::left << std::setw(8) << "angle";
  for (int a = 1; a <= kAnglesPerRing; ++a) out << std::setw(5) << a;
  out << "cursor\n";
  for (Region r : {Region::kInner, Region::kMiddle, Region::kOuter}) {
    out << std::setw(8) << RegionName(r);
    for (int a = 1; a <= kAnglesPerRing; ++a) out << std::setw(5) << cell(Position::At(r, a));
    auto c = state.ring_cursor(r);
    out << (c ? std::to_string(*c) : "-") << '\n';
  }
  out << std::setw(8) << "Center" << cell(Position{kCenterPosition}) << '\n';
  return out.str();
}

}  // namespace dpgame
