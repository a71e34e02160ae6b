#include "dpgame/board.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace dpgame {
namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

int RingSlot(Region r) { return static_cast<int>(r) - 1; }

// Angle one step clockwise, wrapping 8 -> 1.
int Clockwise(int angle, int steps = 1) {
  return (angle - 1 + steps) % kAnglesPerRing + 1;
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

int ParseInt(std::string_view s, const char* what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError(std::string("malformed ") + what + " '" + std::string(s) + "'");
  }
  return value;
}

Topology MakeTopology() {
  Topology t;
  for (int i = 1; i <= kNumPositions; ++i) t.positions.push_back(Position{i});
  // Four rounds of four pairs; each round visits two spokes, centre-to-inner
  // and middle-to-outer.
  constexpr int kPairs[kNumEvaluationPairs][2] = {
      {25, 1}, {9, 17},  {25, 5}, {13, 21},  // round 1
      {25, 3}, {11, 19}, {25, 7}, {15, 23},  // round 2
      {25, 2}, {10, 18}, {25, 6}, {14, 22},  // round 3
      {25, 8}, {16, 24}, {25, 4}, {12, 20},  // round 4
  };
  for (int k = 0; k < kNumEvaluationPairs; ++k) {
    t.pairs.push_back(EvaluationPair{Position{kPairs[k][0]}, Position{kPairs[k][1]},
                                     k / 4 + 1, k % 4 + 1});
  }
  return t;
}

}  // namespace

std::string_view RegionName(Region r) {
  switch (r) {
    case Region::kCenter:
      return "Center";
    case Region::kInner:
      return "Inner";
    case Region::kMiddle:
      return "Middle";
    case Region::kOuter:
      return "Outer";
  }
  return "";
}

Region ParseRegion(std::string_view s) {
  const std::string l = Lower(s);
  if (l == "center" || l == "centre") return Region::kCenter;
  if (l == "inner") return Region::kInner;
  if (l == "middle") return Region::kMiddle;
  if (l == "outer") return Region::kOuter;
  throw ValidationError("unknown region '" + std::string(s) + "'");
}

Position Position::At(Region ring, int angle) {
  if (ring == Region::kCenter) return Position{kCenterPosition};
  if (angle < 1 || angle > kAnglesPerRing) {
    throw ValidationError("angle " + std::to_string(angle) + " outside 1..8");
  }
  return Position{RingSlot(ring) * kAnglesPerRing + angle};
}

Region Position::region() const {
  if (index == kCenterPosition) return Region::kCenter;
  return static_cast<Region>((index - 1) / kAnglesPerRing + 1);
}

int Position::angle() const {
  if (index == kCenterPosition) return 0;
  return (index - 1) % kAnglesPerRing + 1;
}

const Topology& BoardTopology() {
  static const Topology topology = MakeTopology();
  return topology;
}

std::vector<Position> Neighbors(Position p) {
  std::vector<Position> out;
  if (p.region() == Region::kCenter) {
    for (int a = 1; a <= kAnglesPerRing; ++a) out.push_back(Position::At(Region::kInner, a));
    return out;
  }
  const Region ring = p.region();
  const int angle = p.angle();
  out.push_back(Position::At(ring, Clockwise(angle, kAnglesPerRing - 1)));
  out.push_back(Position::At(ring, Clockwise(angle)));
  if (ring == Region::kInner) {
    out.push_back(Position{kCenterPosition});
  } else {
    out.push_back(Position::At(static_cast<Region>(static_cast<int>(ring) - 1), angle));
  }
  if (ring != Region::kOuter) {
    out.push_back(Position::At(static_cast<Region>(static_cast<int>(ring) + 1), angle));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string Action::ToString() const {
  std::string s = token.ToString() + "@" + std::string(RegionName(region));
  if (opening_angle) s += ":" + std::to_string(*opening_angle);
  return s;
}

std::string_view TerminalReasonName(TerminalReason r) {
  switch (r) {
    case TerminalReason::kBudgetsExhausted:
      return "BudgetsExhausted";
    case TerminalReason::kBoardFull:
      return "BoardFull";
    case TerminalReason::kNoLegalMove:
      return "NoLegalMove";
  }
  return "";
}

TerminalReason ParseTerminalReason(std::string_view s) {
  for (auto r : {TerminalReason::kBudgetsExhausted, TerminalReason::kBoardFull,
                 TerminalReason::kNoLegalMove}) {
    if (TerminalReasonName(r) == s) return r;
  }
  throw ValidationError("unknown terminal reason '" + std::string(s) + "'");
}

void GameConfig::Validate() const {
  if (budget < 0 || budget > kNumPositions) {
    throw ValidationError("budget " + std::to_string(budget) + " outside 0..25");
  }
  if (usage_limit < 1 || usage_limit > kNumPositions) {
    throw ValidationError("usage limit " + std::to_string(usage_limit) + " outside 1..25");
  }
}

GameState::GameState(GameConfig config) : config_(config) {
  config_.Validate();
  terminal_ = ComputeTerminal();
}

std::optional<int> GameState::ring_cursor(Region ring) const {
  if (!IsRing(ring)) return std::nullopt;
  int c = cursor_[RingSlot(ring)];
  if (c == 0) return std::nullopt;
  return c;
}

bool GameState::HasLegalAction() const {
  if (placements_[ToInt(to_move_)] >= config_.budget) return false;
  if (occupied_count() >= kNumPositions) return false;
  for (int i = 1; i <= kTokensPerRole; ++i) {
    if (usage_[ToInt(to_move_)][i] < config_.usage_limit) return true;
  }
  return false;
}

std::optional<TerminalReason> GameState::ComputeTerminal() const {
  const int budget = config_.budget;
  if (placements_[0] >= budget && placements_[1] >= budget) {
    return TerminalReason::kBudgetsExhausted;
  }
  if (!log_.empty() && placements_[ToInt(log_.back().player)] >= budget) {
    return TerminalReason::kBudgetsExhausted;
  }
  if (occupied_count() >= kNumPositions) return TerminalReason::kBoardFull;
  if (!HasLegalAction()) return TerminalReason::kNoLegalMove;
  return std::nullopt;
}

std::vector<Action> GameState::LegalActions() const {
  std::vector<Action> out;
  if (terminal_) return out;
  const Player mover = to_move_;
  if (placements_[ToInt(mover)] >= config_.budget) return out;

  // Region variants are independent of the token, so build them once.
  std::vector<std::pair<Region, std::optional<int>>> targets;
  if (!cells_[kCenterPosition]) targets.emplace_back(Region::kCenter, std::nullopt);
  for (Region ring : {Region::kInner, Region::kMiddle, Region::kOuter}) {
    const int cursor = cursor_[RingSlot(ring)];
    if (cursor == 0) {
      for (int a = 1; a <= kAnglesPerRing; ++a) targets.emplace_back(ring, a);
    } else {
      bool has_empty = false;
      for (int a = 1; a <= kAnglesPerRing; ++a) {
        if (!cells_[Position::At(ring, a).index]) has_empty = true;
      }
      if (has_empty) targets.emplace_back(ring, std::nullopt);
    }
  }

  for (int i = 1; i <= kTokensPerRole; ++i) {
    if (usage_[ToInt(mover)][i] >= config_.usage_limit) continue;
    for (const auto& [region, angle] : targets) {
      out.push_back(Action{TokenId{mover, i}, region, angle});
    }
  }
  return out;
}

Position GameState::ResolveTarget(const Action& action) const {
  if (terminal_) throw IllegalMoveError("game is over");
  const Player mover = to_move_;
  const std::string side(Lower(PlayerName(mover)));
  if (action.token.role != mover) {
    throw IllegalMoveError("wrong-role token: " + action.token.ToString() + " is not an " +
                           side + " token");
  }
  if (action.token.index < 1 || action.token.index > kTokensPerRole) {
    throw IllegalMoveError("no token " + action.token.ToString());
  }
  if (placements_[ToInt(mover)] >= config_.budget) {
    throw IllegalMoveError(side + " budget of " + std::to_string(config_.budget) +
                           " exhausted");
  }
  if (usage_[ToInt(mover)][action.token.index] >= config_.usage_limit) {
    throw IllegalMoveError("token " + action.token.ToString() + " already used " +
                           (config_.usage_limit == 2 ? std::string("twice")
                                                     : std::to_string(config_.usage_limit) +
                                                           " times"));
  }

  if (action.region == Region::kCenter) {
    if (action.opening_angle) throw IllegalMoveError("center takes no opening angle");
    if (cells_[kCenterPosition]) throw IllegalMoveError("center occupied");
    return Position{kCenterPosition};
  }

  const std::string ring_name = Lower(RegionName(action.region)) + " ring";
  const int cursor = cursor_[RingSlot(action.region)];
  if (cursor == 0) {
    if (!action.opening_angle) {
      throw IllegalMoveError("opening angle required for the unopened " + ring_name);
    }
    const int a = *action.opening_angle;
    if (a < 1 || a > kAnglesPerRing) {
      throw IllegalMoveError("opening angle " + std::to_string(a) + " outside 1..8");
    }
    return Position::At(action.region, a);
  }
  if (action.opening_angle) {
    throw IllegalMoveError("opening angle given for the opened " + ring_name);
  }
  for (int step = 1; step < kAnglesPerRing; ++step) {
    Position p = Position::At(action.region, Clockwise(cursor, step));
    if (!cells_[p.index]) return p;
  }
  throw IllegalMoveError(ring_name + " full");
}

void GameState::ApplyInPlace(const Action& action) {
  const Position target = ResolveTarget(action);
  const Player mover = to_move_;
  cells_[target.index] = Occupant{mover, action.token};
  if (IsRing(action.region)) cursor_[RingSlot(action.region)] = target.angle();
  ++placements_[ToInt(mover)];
  ++usage_[ToInt(mover)][action.token.index];
  log_.push_back(MoveRecord{ply(), mover, action, target});
  to_move_ = Opponent(mover);
  terminal_ = ComputeTerminal();
}

GameState GameState::Apply(const Action& action) const {
  GameState next = *this;
  next.ApplyInPlace(action);
  return next;
}

GameState NewGame(const GameConfig& config) { return GameState(config); }

std::vector<Action> LegalActions(const GameState& state) { return state.LegalActions(); }

GameState ApplyAction(const GameState& state, const Action& action) {
  return state.Apply(action);
}

std::optional<TerminalReason> IsTerminal(const GameState& state) {
  return state.terminal_reason();
}

std::string FormatMoveLine(const MoveRecord& move) {
  std::ostringstream out;
  out << move.ply << ',' << PlayerName(move.player) << ',' << move.action.token.ToString()
      << ',' << RegionName(move.action.region) << ',' << move.position.index;
  return out.str();
}

Action ParseMoveLine(const GameState& state, std::string_view line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.remove_suffix(1);
  auto fields = Split(line, ',');
  if (fields.size() != 5) {
    throw ValidationError("move line '" + std::string(line) + "': expected 5 fields");
  }
  const int ply = ParseInt(fields[0], "ply");
  if (ply != state.ply()) {
    throw ValidationError("move line '" + std::string(line) + "': expected ply " +
                          std::to_string(state.ply()));
  }
  const Player player = ParsePlayer(fields[1]);
  Action action{TokenId::Parse(fields[2]), ParseRegion(fields[3]), std::nullopt};
  if (action.token.role != player) {
    throw ValidationError("move line '" + std::string(line) + "': token role mismatch");
  }
  const int index = ParseInt(fields[4], "position");
  if (index < 1 || index > kNumPositions || Position{index}.region() != action.region) {
    throw ValidationError("move line '" + std::string(line) + "': position not in region");
  }
  if (IsRing(action.region) && !state.ring_cursor(action.region)) {
    action.opening_angle = Position{index}.angle();
  }
  return action;
}

GameState ReplayMoveLines(const GameConfig& config, std::span<const std::string> lines) {
  GameState state(config);
  for (const auto& line : lines) {
    if (line.empty()) continue;
    Action action = ParseMoveLine(state, line);
    const int expected = std::stoi(std::string(Split(line, ',').back()));
    if (state.ResolveTarget(action).index != expected) {
      throw ValidationError("move line '" + line + "': resolves to a different position");
    }
    state.ApplyInPlace(action);
  }
  return state;
}

}  // namespace dpgame
