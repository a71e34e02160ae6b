#ifndef DPGAME_BOARD_H_
#define DPGAME_BOARD_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dpgame/catalog.h"

namespace dpgame {

// Raised by ApplyAction for any placement the rules forbid. The message is
// the user-facing reason ("center occupied", "inner ring full", ...).
class IllegalMoveError : public Error {
 public:
  using Error::Error;
};

// Raised when an operation is called in the wrong game phase, e.g. scoring a
// game that has not ended.
class StateError : public Error {
 public:
  using Error::Error;
};

// Region order doubles as the tie-break order for AI move selection.
enum class Region : std::uint8_t { kCenter = 0, kInner = 1, kMiddle = 2, kOuter = 3 };

inline constexpr int kNumPositions = 25;
inline constexpr int kCenterPosition = 25;
inline constexpr int kAnglesPerRing = 8;
inline constexpr int kNumRings = 3;
inline constexpr int kNumEvaluationPairs = 16;

std::string_view RegionName(Region r);
Region ParseRegion(std::string_view s);  // case-insensitive; throws ValidationError
constexpr bool IsRing(Region r) { return r != Region::kCenter; }

// Positions are numbered 1..25: 1-8 inner ring, 9-16 middle, 17-24 outer,
// 25 center. Angle k of a ring sits on the same spoke in every ring.
struct Position {
  int index = kCenterPosition;

  static Position At(Region ring, int angle);
  Region region() const;
  // 1..8; 0 for the center.
  int angle() const;

  friend auto operator<=>(const Position&, const Position&) = default;
};

struct EvaluationPair {
  Position a;
  Position b;
  int round = 1;           // 1..4
  int order_in_round = 1;  // 1..4

  bool Contains(Position p) const { return a == p || b == p; }
  friend bool operator==(const EvaluationPair&, const EvaluationPair&) = default;
};

struct Topology {
  std::vector<Position> positions;    // 25, in index order
  std::vector<EvaluationPair> pairs;  // 16, in scoring order
};

// The fixed board: positions plus the four scoring rounds.
const Topology& BoardTopology();

// Ring neighbours (angle +/- 1), spoke neighbours (same angle, adjacent ring)
// and inner ring <-> center. Rendering only; scoring uses evaluation pairs.
std::vector<Position> Neighbors(Position p);

struct Action {
  TokenId token;
  Region region = Region::kCenter;
  // Present iff the target ring holds no token yet.
  std::optional<int> opening_angle;

  std::string ToString() const;
  friend bool operator==(const Action&, const Action&) = default;
};

struct Occupant {
  Player player = Player::kAttacker;
  TokenId token;
  friend bool operator==(const Occupant&, const Occupant&) = default;
};

struct MoveRecord {
  int ply = 0;
  Player player = Player::kAttacker;
  Action action;
  Position position;
  friend bool operator==(const MoveRecord&, const MoveRecord&) = default;
};

enum class TerminalReason : std::uint8_t { kBudgetsExhausted, kBoardFull, kNoLegalMove };
std::string_view TerminalReasonName(TerminalReason r);
TerminalReason ParseTerminalReason(std::string_view s);

struct GameConfig {
  int budget = kTokensPerRole;  // placements per player
  int usage_limit = 2;          // placements per (player, token type)

  void Validate() const;  // throws ValidationError
  friend bool operator==(const GameConfig&, const GameConfig&) = default;
};

// Immutable-by-convention value type. Apply returns a successor state; the
// in-place variant exists for search code that manages its own copies.
class GameState {
 public:
  explicit GameState(GameConfig config = {});

  const GameConfig& config() const { return config_; }
  const std::optional<Occupant>& cell(Position p) const { return cells_[p.index]; }
  // Angle of the most recent placement in a ring; nullopt if unopened.
  std::optional<int> ring_cursor(Region ring) const;
  int placements(Player p) const { return placements_[ToInt(p)]; }
  int usage(TokenId t) const { return usage_[ToInt(t.role)][t.index]; }
  Player to_move() const { return to_move_; }
  int ply() const { return static_cast<int>(log_.size()); }
  std::span<const MoveRecord> log() const { return log_; }
  std::optional<TerminalReason> terminal_reason() const { return terminal_; }
  bool IsTerminal() const { return terminal_.has_value(); }
  int occupied_count() const { return placements_[0] + placements_[1]; }

  std::vector<Action> LegalActions() const;
  // Target cell for `action`, or IllegalMoveError with the reason.
  Position ResolveTarget(const Action& action) const;
  GameState Apply(const Action& action) const;
  void ApplyInPlace(const Action& action);

  friend bool operator==(const GameState&, const GameState&) = default;

 private:
  bool HasLegalAction() const;
  std::optional<TerminalReason> ComputeTerminal() const;

  GameConfig config_;
  std::array<std::optional<Occupant>, kNumPositions + 1> cells_{};  // [0] unused
  std::array<int, kNumRings> cursor_{};                              // 0 = unopened
  std::array<int, kNumPlayers> placements_{};
  std::array<std::array<std::uint8_t, kTokensPerRole + 1>, kNumPlayers> usage_{};
  Player to_move_ = Player::kAttacker;
  std::vector<MoveRecord> log_;
  std::optional<TerminalReason> terminal_;
};

GameState NewGame(const GameConfig& config = {});
std::vector<Action> LegalActions(const GameState& state);
GameState ApplyAction(const GameState& state, const Action& action);
std::optional<TerminalReason> IsTerminal(const GameState& state);

// Replay-file line: `ply,player,token,region,resolved_position`.
std::string FormatMoveLine(const MoveRecord& move);
// Parses one line against the state it applies to (needed to recover the
// opening angle) and returns the action.
Action ParseMoveLine(const GameState& state, std::string_view line);
GameState ReplayMoveLines(const GameConfig& config, std::span<const std::string> lines);

}  // namespace dpgame

#endif  // DPGAME_BOARD_H_
