#include "dpgame/service.h"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "dpgame/judge.h"
#include "dpgame/serialization.h"

namespace dpgame {
namespace {

std::string NowIso8601() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

std::string NewSessionId() {
  static std::mutex mu;
  static std::random_device device;
  static std::mt19937_64 rng(
      (static_cast<std::uint64_t>(device()) << 32) ^ device() ^
      static_cast<std::uint64_t>(std::chrono::steady_clock::now().time_since_epoch().count()));
  std::lock_guard lock(mu);
  std::ostringstream out;
  out << std::hex << std::setfill('0') << std::setw(16) << rng() << std::setw(16) << rng();
  return out.str();
}

std::shared_ptr<const Catalog> LoadCatalogRef(const std::string& ref) {
  if (ref == "default") {
    return std::shared_ptr<const Catalog>(&Catalog::Default(), [](const Catalog*) {});
  }
  return std::make_shared<const Catalog>(Catalog::LoadFile(ref));
}

std::string SeatName(const std::optional<Policy>& seat) {
  return seat ? seat->Name() : "human";
}

std::optional<Policy> SeatFromJson(const json& j, const char* key, const char* fallback,
                                   std::uint64_t seed) {
  std::string name = fallback;
  if (j.contains(key)) {
    if (!j[key].is_string()) throw ValidationError(std::string("config: '") + key + "' must be a string");
    name = j[key].get<std::string>();
  }
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "human") return std::nullopt;
  return Policy::Parse(name, seed);
}

json VerdictPayload(const GameState& state, const MatchupMatrix& matrix) {
  const auto iterations = IterationLog(state, matrix);
  int a = 0;
  int d = 0;
  for (const auto& it : iterations) {
    a += it.a_points;
    d += it.d_points;
  }
  json j = ToJson(iterations.back());
  j["totals"] = json{{"attacker", a}, {"defender", d}};
  return j;
}

json EndPayload(const GameState& state, const MatchupMatrix& matrix, const Catalog& catalog,
                std::optional<Player> resigned_by) {
  json j;
  if (resigned_by) {
    j["reason"] = "Resigned";
    j["resigned_by"] = PlayerName(*resigned_by);
  } else {
    j["reason"] = TerminalReasonName(*state.terminal_reason());
  }
  const GameReport report = MakeGameReportUnchecked(state, matrix, catalog);
  j["final"] = ToJson(report.final);
  j["report"] = ToJson(report);
  return j;
}

// Events implied by the move that produced `state`, in append order.
std::vector<std::pair<EventKind, json>> DerivedEvents(const GameState& state,
                                                      const MatchupMatrix& matrix,
                                                      const Catalog& catalog) {
  std::vector<std::pair<EventKind, json>> out;
  if (state.ply() > 0 && state.ply() % 2 == 0) {
    const auto& log = state.log();
    const Verdict v = JudgeMatchup(matrix, log[log.size() - 2].action.token,
                                   log.back().action.token);
    if (v.source == VerdictSource::kJudged) {
      out.emplace_back(EventKind::kVerdictIssued, VerdictPayload(state, matrix));
    }
  }
  if (state.IsTerminal()) {
    out.emplace_back(EventKind::kGameEnded, EndPayload(state, matrix, catalog, std::nullopt));
  }
  return out;
}

json MovePayload(const MoveRecord& move, bool by_ai) {
  json j = ToJson(move);
  j["by"] = by_ai ? "ai" : "human";
  return j;
}

json LegalSummary(const GameState& state) {
  std::set<std::string> tokens;
  std::map<Region, std::vector<int>> regions;
  for (const auto& a : state.LegalActions()) {
    tokens.insert(a.token.ToString());
    auto& angles = regions[a.region];
    if (a.opening_angle &&
        std::find(angles.begin(), angles.end(), *a.opening_angle) == angles.end()) {
      angles.push_back(*a.opening_angle);
    }
  }
  json r = json::array();
  for (const auto& [region, angles] : regions) {
    json entry{{"region", RegionName(region)}};
    entry["opening_angles"] = angles.empty() ? json(nullptr) : json(angles);
    r.push_back(entry);
  }
  // Keep token order numeric rather than lexicographic.
  json t = json::array();
  for (int i = 1; i <= kTokensPerRole; ++i) {
    const std::string id = TokenId{state.to_move(), i}.ToString();
    if (tokens.count(id)) t.push_back(id);
  }
  return json{{"tokens", t}, {"regions", r}};
}

std::optional<Player> SeatOf(const json& command) {
  if (!command.contains("seat") || command["seat"].is_null()) return std::nullopt;
  if (!command["seat"].is_string()) throw ValidationError("command: 'seat' must be a string");
  return ParsePlayer(command["seat"].get<std::string>());
}

}  // namespace

SessionConfig SessionConfigFromJson(const json& j) {
  if (!j.is_object()) throw ValidationError("malformed config: expected an object");
  SessionConfig c;
  if (j.contains("catalog")) {
    if (!j["catalog"].is_string()) throw ValidationError("config: 'catalog' must be a string");
    c.catalog = j["catalog"].get<std::string>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
      throw ValidationError("config: 'seed' must be an integer");
    }
    c.seed = j["seed"].get<std::uint64_t>();
  }
  c.attacker = SeatFromJson(j, "attacker", "greedy", c.seed);
  c.defender = SeatFromJson(j, "defender", "human", c.seed);
  try {
    c.game.budget = j.value("budget", c.game.budget);
    c.game.usage_limit = j.value("usage_limit", c.game.usage_limit);
    c.hints = j.value("hints", c.hints);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed config: ") + e.what());
  }
  c.game.Validate();
  return c;
}

json ToJson(const SessionConfig& c) {
  return json{{"catalog", c.catalog},
              {"attacker", SeatName(c.attacker)},
              {"defender", SeatName(c.defender)},
              {"seed", c.seed},
              {"budget", c.game.budget},
              {"usage_limit", c.game.usage_limit},
              {"hints", c.hints}};
}

std::string_view EventKindName(EventKind k) {
  switch (k) {
    case EventKind::kGameCreated:
      return "GameCreated";
    case EventKind::kMovePlaced:
      return "MovePlaced";
    case EventKind::kVerdictIssued:
      return "VerdictIssued";
    case EventKind::kGameEnded:
      return "GameEnded";
  }
  return "";
}

json WireEvent::ToJson() const {
  return json{{"seq", sequence}, {"kind", EventKindName(kind)}, {"payload", payload}};
}

WireEvent WireEvent::FromJson(const json& j) {
  if (!j.is_object() || !j.contains("seq") || !j.contains("kind") || !j.contains("payload") ||
      !j["seq"].is_number_integer() || !j["kind"].is_string()) {
    throw ReplayError("malformed event: " + j.dump());
  }
  WireEvent e;
  e.sequence = j["seq"].get<long long>();
  const std::string kind = j["kind"].get<std::string>();
  bool known = false;
  for (auto k : {EventKind::kGameCreated, EventKind::kMovePlaced, EventKind::kVerdictIssued,
                 EventKind::kGameEnded}) {
    if (EventKindName(k) == kind) {
      e.kind = k;
      known = true;
    }
  }
  if (!known) throw ReplayError("unknown event kind '" + kind + "'");
  e.payload = j["payload"];
  return e;
}

std::vector<WireEvent> ReadEventLog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("file not found: " + path.string());
  std::vector<WireEvent> events;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ReplayError("line " + std::to_string(lineno) + ": invalid JSON");
    }
    events.push_back(WireEvent::FromJson(j));
  }
  return events;
}

ReplayResult SessionReplay(std::span<const WireEvent> events) {
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].sequence != static_cast<long long>(i)) {
      throw ReplayError("sequence gap at " + std::to_string(i));
    }
  }
  if (events.empty() || events[0].kind != EventKind::kGameCreated) {
    throw ReplayError("log must start with GameCreated");
  }
  const json& created = events[0].payload;
  if (!created.contains("config") || !created.contains("session_id")) {
    throw ReplayError("GameCreated payload lacks config or session_id");
  }

  ReplayResult result{GameState(), SessionConfig{}, "", SessionStatus::kOpen, std::nullopt,
                      std::nullopt};
  try {
    result.config = SessionConfigFromJson(created["config"]);
  } catch (const Error& e) {
    throw ReplayError(std::string("GameCreated config rejected: ") + e.what());
  }
  result.session_id = created["session_id"].get<std::string>();
  const auto catalog = LoadCatalogRef(result.config.catalog);
  const MatchupMatrix matrix = SeededMatchupMatrix(*catalog);
  result.state = GameState(result.config.game);

  auto diverge = [](std::size_t seq, const std::string& what) {
    return ReplayError("replay divergence at " + std::to_string(seq) + ": " + what);
  };

  std::size_t i = 1;
  if (result.state.IsTerminal()) {
    const json expected = EndPayload(result.state, matrix, *catalog, std::nullopt);
    if (events.size() < 2 || events[1].kind != EventKind::kGameEnded ||
        events[1].payload.dump() != expected.dump()) {
      throw diverge(1, "expected GameEnded for a game over at creation");
    }
    result.status = SessionStatus::kFinished;
    i = 2;
  }
  while (i < events.size()) {
    const WireEvent& e = events[i];
    if (result.status == SessionStatus::kFinished) throw diverge(i, "event after GameEnded");
    switch (e.kind) {
      case EventKind::kGameCreated:
        throw diverge(i, "second GameCreated");
      case EventKind::kVerdictIssued:
        throw diverge(i, "unexpected VerdictIssued");
      case EventKind::kGameEnded: {
        // Only a resignation may end the game outside DerivedEvents.
        if (e.payload.value("reason", "") != "Resigned" || !e.payload.contains("resigned_by")) {
          throw diverge(i, "unexpected GameEnded");
        }
        const Player who = ParsePlayer(e.payload["resigned_by"].get<std::string>());
        const json expected = EndPayload(result.state, matrix, *catalog, who);
        if (expected.dump() != e.payload.dump()) throw diverge(i, "GameEnded payload differs");
        result.status = SessionStatus::kFinished;
        result.resigned_by = who;
        ++i;
        break;
      }
      case EventKind::kMovePlaced: {
        Action action;
        try {
          action = ActionFromJson(e.payload.at("action"), *catalog, result.state.to_move());
          const Position target = result.state.ResolveTarget(action);
          if (e.payload.at("ply").get<int>() != result.state.ply() ||
              ParsePlayer(e.payload.at("player").get<std::string>()) != result.state.to_move() ||
              e.payload.at("position").get<int>() != target.index) {
            throw diverge(i, "MovePlaced does not match the replayed state");
          }
        } catch (const ReplayError&) {
          throw;
        } catch (const std::exception& ex) {
          throw diverge(i, std::string("MovePlaced rejected: ") + ex.what());
        }
        result.state.ApplyInPlace(action);
        ++i;
        for (auto& [kind, payload] : DerivedEvents(result.state, matrix, *catalog)) {
          if (i >= events.size()) {
            throw diverge(i, std::string("missing ") + std::string(EventKindName(kind)));
          }
          if (events[i].kind != kind || events[i].payload.dump() != payload.dump()) {
            throw diverge(i, std::string(EventKindName(kind)) + " payload differs");
          }
          if (kind == EventKind::kGameEnded) result.status = SessionStatus::kFinished;
          ++i;
        }
        break;
      }
    }
  }
  if (result.status == SessionStatus::kFinished) {
    result.report = MakeGameReportUnchecked(result.state, matrix, *catalog);
  }
  return result;
}

struct SessionStore::Session {
  mutable std::mutex mu;
  SessionRecord record;
  GameState state;
  std::shared_ptr<const Catalog> catalog;
  MatchupMatrix matrix;
  std::optional<Player> resigned_by;

  json ViewLocked(long long since) const {
    json j{{"session_id", record.session_id},
           {"created_at", record.created_at},
           {"status", record.status == SessionStatus::kOpen ? "Open" : "Finished"},
           {"config", ToJson(record.config)},
           {"sequence", record.events.empty() ? -1 : record.events.back().sequence},
           {"state", ToJson(state)}};
    j["seats"] = json{{"Attacker", SeatName(record.config.attacker)},
                      {"Defender", SeatName(record.config.defender)}};
    j["legal"] = LegalSummary(state);
    j["last_verdict"] = nullptr;
    for (auto it = record.events.rbegin(); it != record.events.rend(); ++it) {
      if (it->kind == EventKind::kVerdictIssued) {
        j["last_verdict"] = it->payload;
        break;
      }
    }
    const FinalResult score = ScoreBoard(state, matrix);
    j["score"] = json{{"attacker", score.attacker_total}, {"defender", score.defender_total}};
    json events = json::array();
    for (const auto& e : record.events) {
      if (e.sequence >= since) events.push_back(e.ToJson());
    }
    j["events"] = events;
    return j;
  }
};

SessionStore::SessionStore(std::optional<std::filesystem::path> data_dir)
    : data_dir_(std::move(data_dir)) {
  if (!data_dir_) return;
  std::filesystem::create_directories(*data_dir_);
  for (const auto& entry : std::filesystem::directory_iterator(*data_dir_)) {
    if (entry.path().extension() != ".jsonl") continue;
    try {
      auto events = ReadEventLog(entry.path());
      ReplayResult replay = SessionReplay(events);
      auto s = std::make_shared<Session>();
      s->record = SessionRecord{replay.session_id, events[0].payload.value("created_at", ""),
                                replay.config, std::move(events), replay.status};
      s->state = std::move(replay.state);
      s->catalog = LoadCatalogRef(replay.config.catalog);
      s->matrix = SeededMatchupMatrix(*s->catalog);
      s->resigned_by = replay.resigned_by;
      sessions_.emplace(s->record.session_id, std::move(s));
    } catch (const std::exception& e) {
      std::cerr << "skipping session log " << entry.path() << ": " << e.what() << '\n';
    }
  }
}

SessionStore::~SessionStore() = default;

std::shared_ptr<SessionStore::Session> SessionStore::Find(const std::string& id) const {
  std::shared_lock lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFoundError("unknown session '" + id + "'");
  return it->second;
}

std::optional<std::filesystem::path> SessionStore::LogPath(const std::string& id) const {
  if (!data_dir_) return std::nullopt;
  return *data_dir_ / (id + ".jsonl");
}

void SessionStore::Persist(const Session& session, std::span<const WireEvent> events) const {
  if (!data_dir_ || events.empty()) return;
  std::string chunk;
  for (const auto& e : events) chunk += e.ToJson().dump() + "\n";
  std::ofstream out(*LogPath(session.record.session_id), std::ios::app | std::ios::binary);
  out << chunk;
  out.flush();
  if (!out) throw Error("failed to persist session " + session.record.session_id);
}

json SessionStore::Create(const json& config_json) {
  SessionConfig config = SessionConfigFromJson(config_json);
  auto s = std::make_shared<Session>();
  s->catalog = LoadCatalogRef(config.catalog);
  s->matrix = SeededMatchupMatrix(*s->catalog);
  s->state = GameState(config.game);
  s->record.session_id = NewSessionId();
  s->record.created_at = NowIso8601();
  s->record.config = config;
  s->record.status = s->state.IsTerminal() ? SessionStatus::kFinished : SessionStatus::kOpen;

  std::vector<WireEvent> events;
  events.push_back(WireEvent{0, EventKind::kGameCreated,
                             json{{"session_id", s->record.session_id},
                                  {"created_at", s->record.created_at},
                                  {"config", ToJson(config)}}});
  // A degenerate config (budget 0) ends before the first move.
  if (s->state.IsTerminal()) {
    events.push_back(WireEvent{1, EventKind::kGameEnded,
                               EndPayload(s->state, s->matrix, *s->catalog, std::nullopt)});
  }
  Persist(*s, events);
  s->record.events = std::move(events);

  std::lock_guard session_lock(s->mu);
  json view = s->ViewLocked(0);
  std::unique_lock lock(mu_);
  sessions_.emplace(s->record.session_id, s);
  return view;
}

json SessionStore::Command(const std::string& id, const json& command) {
  auto s = Find(id);
  std::lock_guard lock(s->mu);
  if (!command.is_object() || !command.contains("type") || !command["type"].is_string()) {
    throw ValidationError("command: missing string field 'type'");
  }
  const std::string type = command["type"].get<std::string>();
  if (type != "PlaceToken" && type != "RequestAiMove" && type != "Resign") {
    throw ValidationError("unknown command '" + type + "'");
  }
  if (s->record.status == SessionStatus::kFinished) throw ConflictError("session finished");

  const Player mover = s->state.to_move();
  const std::optional<Player> seat = SeatOf(command);
  long long seq = s->record.events.back().sequence + 1;
  std::vector<WireEvent> events;
  GameState next = s->state;
  std::optional<Player> resigned;

  if (type == "Resign") {
    const Player who = seat.value_or(mover);
    if (s->record.config.seat(who)) {
      throw ConflictError("seat " + std::string(PlayerName(who)) + " is AI-controlled");
    }
    resigned = who;
    events.push_back(WireEvent{seq++, EventKind::kGameEnded,
                               EndPayload(next, s->matrix, *s->catalog, who)});
  } else {
    if (seat && *seat != mover) {
      throw ConflictError("out of turn: " + std::string(PlayerName(mover)) + " to move");
    }
    const auto& policy = s->record.config.seat(mover);
    Action action;
    bool by_ai = false;
    if (type == "PlaceToken") {
      if (policy) {
        throw ConflictError("out of turn: " + std::string(PlayerName(mover)) +
                            " is played by " + policy->Name());
      }
      action = ActionFromJson(command, *s->catalog, mover);
    } else {
      if (!policy) {
        throw ConflictError("seat " + std::string(PlayerName(mover)) + " is human");
      }
      action = ChooseAction(*policy, next, s->matrix);
      by_ai = true;
    }
    // Surfaces the board's reason verbatim on an illegal placement.
    next.ApplyInPlace(action);
    events.push_back(
        WireEvent{seq++, EventKind::kMovePlaced, MovePayload(next.log().back(), by_ai)});
    for (auto& [kind, payload] : DerivedEvents(next, s->matrix, *s->catalog)) {
      events.push_back(WireEvent{seq++, kind, std::move(payload)});
    }
  }

  Persist(*s, events);
  const long long first = events.front().sequence;
  for (auto& e : events) {
    if (e.kind == EventKind::kGameEnded) s->record.status = SessionStatus::kFinished;
    s->record.events.push_back(std::move(e));
  }
  s->state = std::move(next);
  if (resigned) s->resigned_by = resigned;
  return s->ViewLocked(first);
}

json SessionStore::View(const std::string& id, long long since) const {
  auto s = Find(id);
  std::lock_guard lock(s->mu);
  return s->ViewLocked(since);
}

json SessionStore::Report(const std::string& id) const {
  auto s = Find(id);
  std::lock_guard lock(s->mu);
  const GameReport report = MakeGameReportUnchecked(s->state, s->matrix, *s->catalog);
  json j = ToJson(report);
  j["status"] = s->record.status == SessionStatus::kOpen ? "Open" : "Finished";
  j["trick_breakdown"] = ToJson(TrickBreakdown(std::span(&report, 1)));
  return j;
}

json SessionStore::Hint(const std::string& id) const {
  auto s = Find(id);
  std::lock_guard lock(s->mu);
  if (!s->record.config.hints) throw ConflictError("hints disabled");
  if (s->record.status == SessionStatus::kFinished) throw ConflictError("session finished");
  const Action a = ChooseAction(Policy::Greedy(), s->state, s->matrix);
  const GameState after = s->state.Apply(a);
  const Position target = after.log().back().position;
  json j{{"action", ToJson(a)}, {"position", target.index}, {"seat", PlayerName(s->state.to_move())}};
  j["targets"] = json::array();
  // The judged matchups the suggestion would complete.
  for (const auto& pair : BoardTopology().pairs) {
    if (!pair.Contains(target)) continue;
    const ScoreEvent e = EvaluatePair(after, pair, s->matrix);
    if (e.kind == ScoreKind::kIncomplete) continue;
    j["targets"].push_back(ToJson(e));
  }
  return j;
}

std::vector<WireEvent> SessionStore::Events(const std::string& id) const {
  auto s = Find(id);
  std::lock_guard lock(s->mu);
  return s->record.events;
}

std::vector<std::string> SessionStore::SessionIds() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> ids;
  for (const auto& [id, _] : sessions_) ids.push_back(id);
  return ids;
}

}  // namespace dpgame
