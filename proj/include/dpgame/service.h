#ifndef DPGAME_SERVICE_H_
#define DPGAME_SERVICE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dpgame/analytics.h"
#include "dpgame/board.h"
#include "dpgame/catalog.h"
#include "dpgame/strategies.h"

namespace dpgame {

using nlohmann::json;

// Overrides the default data directory of `serve`.
inline constexpr const char* kDataDirEnv = "DPGAME_DATA_DIR";

// Replay found a log that does not reproduce itself: a sequence gap, an
// out-of-place event, or a recorded payload that differs from the
// recomputed one.
class ReplayError : public Error {
 public:
  using Error::Error;
};

// Command rejected because of whose turn it is or the session's status.
class ConflictError : public Error {
 public:
  using Error::Error;
};

struct SessionConfig {
  std::string catalog = "default";  // "default" or a catalog file path
  std::optional<Policy> attacker;   // nullopt = human seat
  std::optional<Policy> defender;
  std::uint64_t seed = 0;           // seeds Random seats
  GameConfig game;
  bool hints = true;

  const std::optional<Policy>& seat(Player p) const {
    return p == Player::kAttacker ? attacker : defender;
  }
};

// {"catalog", "attacker": "human" | policy name, "defender", "seed",
//  "budget", "usage_limit", "hints"}; missing seats default to attacker
// "greedy", defender "human".
SessionConfig SessionConfigFromJson(const json& j);
json ToJson(const SessionConfig& config);

enum class EventKind : std::uint8_t { kGameCreated, kMovePlaced, kVerdictIssued, kGameEnded };
std::string_view EventKindName(EventKind k);

struct WireEvent {
  long long sequence = 0;
  EventKind kind = EventKind::kGameCreated;
  json payload;

  json ToJson() const;
  static WireEvent FromJson(const json& j);
  friend bool operator==(const WireEvent&, const WireEvent&) = default;
};

enum class SessionStatus : std::uint8_t { kOpen, kFinished };

struct SessionRecord {
  std::string session_id;
  std::string created_at;
  SessionConfig config;
  std::vector<WireEvent> events;
  SessionStatus status = SessionStatus::kOpen;
};

struct ReplayResult {
  GameState state;
  SessionConfig config;
  std::string session_id;
  SessionStatus status = SessionStatus::kOpen;
  std::optional<Player> resigned_by;
  std::optional<GameReport> report;  // set for finished sessions
};

// Rebuilds a session from its event log, recomputing every derived event
// (verdicts, the end-of-game result) and requiring it to match what was
// recorded. Throws ReplayError ("sequence gap at N", "replay divergence ...").
ReplayResult SessionReplay(std::span<const WireEvent> events);

// Reads a JSON-lines session file. Throws NotFoundError("file not found: ...").
std::vector<WireEvent> ReadEventLog(const std::filesystem::path& path);

// Thread-safe registry of live sessions. Commands on one session are
// serialised by that session's mutex; distinct sessions proceed in parallel.
// With a data directory, every event is appended to <dir>/<id>.jsonl before
// it becomes visible, and existing logs are replayed on construction.
class SessionStore {
 public:
  explicit SessionStore(std::optional<std::filesystem::path> data_dir = std::nullopt);
  ~SessionStore();
  SessionStore(const SessionStore&) = delete;
  SessionStore& operator=(const SessionStore&) = delete;

  // Returns the initial view.
  json Create(const json& config);
  // {"type": "PlaceToken", "token", "region", "opening_angle"?, "seat"?}
  // {"type": "RequestAiMove", "seat"?} / {"type": "Resign", "seat"?}
  // Returns the updated view with the events the command appended. A
  // rejected command appends nothing.
  json Command(const std::string& session_id, const json& command);
  // View plus events with sequence >= since.
  json View(const std::string& session_id, long long since = 0) const;
  // Final report when finished, provisional board score otherwise.
  json Report(const std::string& session_id) const;
  // Greedy suggestion for the seat to move (advisory; appends nothing).
  json Hint(const std::string& session_id) const;

  std::vector<WireEvent> Events(const std::string& session_id) const;
  std::vector<std::string> SessionIds() const;
  std::optional<std::filesystem::path> LogPath(const std::string& session_id) const;

 private:
  struct Session;
  std::shared_ptr<Session> Find(const std::string& session_id) const;
  void Persist(const Session& session, std::span<const WireEvent> events) const;

  std::optional<std::filesystem::path> data_dir_;
  mutable std::shared_mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

}  // namespace dpgame

#endif  // DPGAME_SERVICE_H_
