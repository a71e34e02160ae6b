#ifndef DPGAME_JUDGE_H_
#define DPGAME_JUDGE_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dpgame/board.h"
#include "dpgame/catalog.h"

namespace dpgame {

enum class VerdictSource : std::uint8_t { kJudged, kUnjudged };

struct Verdict {
  std::optional<Player> winner;  // nullopt iff unjudged
  VerdictSource source = VerdictSource::kUnjudged;
  std::string comment;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

// Looks the pair up in the matrix. Throws ValidationError if `attacker` is
// not an attacker token or `defender` not a defender token.
Verdict JudgeMatchup(const MatchupMatrix& matrix, TokenId attacker, TokenId defender);

enum class ScoreKind : std::uint8_t {
  kMixedMatchup,
  kSequentialBonus,
  kIncomplete,
  kUnjudgedMatchup,
};
std::string_view ScoreKindName(ScoreKind k);

struct ScoreEvent {
  EvaluationPair pair;
  ScoreKind kind = ScoreKind::kIncomplete;
  int attacker_points = 0;
  int defender_points = 0;
  // Judge comment for mixed matchups, empty otherwise.
  std::string comment;

  int points(Player p) const {
    return p == Player::kAttacker ? attacker_points : defender_points;
  }
  friend bool operator==(const ScoreEvent&, const ScoreEvent&) = default;
};

enum class Outcome : std::uint8_t { kAttackerWin, kDefenderWin, kDraw };
std::string_view OutcomeName(Outcome o);

struct FinalResult {
  std::vector<ScoreEvent> events;  // 16, in round order
  int attacker_total = 0;
  int defender_total = 0;
  Outcome outcome = Outcome::kDraw;

  int total(Player p) const {
    return p == Player::kAttacker ? attacker_total : defender_total;
  }
  friend bool operator==(const FinalResult&, const FinalResult&) = default;
};

// Scores one evaluation pair on the current board:
//   empty endpoint         -> Incomplete (0,0)
//   same player on both    -> SequentialBonus, 2 to that player
//   attacker vs defender   -> MixedMatchup (1 to the judged winner), or
//                             UnjudgedMatchup (0,0) if the pair is unknown.
ScoreEvent EvaluatePair(const GameState& state, const EvaluationPair& pair,
                        const MatchupMatrix& matrix);

// Evaluates all 16 pairs on any state, terminal or not.
FinalResult ScoreBoard(const GameState& state, const MatchupMatrix& matrix);

// ScoreBoard restricted to finished games; throws StateError otherwise.
FinalResult ComputeFinalResult(const GameState& state, const MatchupMatrix& matrix);

// (own - opponent) points on the current board without materialising events.
int ScoreDifferential(const GameState& state, const MatchupMatrix& matrix, Player perspective);

struct IterationVerdict {
  int iteration = 1;
  TokenId attacker_token;
  TokenId defender_token{Player::kDefender, 1};
  Verdict verdict;
  int a_points = 0;
  int d_points = 0;

  friend bool operator==(const IterationVerdict&, const IterationVerdict&) = default;
};

// Judges a sequence of (attacker, defender) token pairs, numbering from 1.
std::vector<IterationVerdict> JudgeIterations(
    std::span<const std::pair<TokenId, TokenId>> matchups, const MatchupMatrix& matrix);

// Pairs plies (2k, 2k+1) of the state's log. A trailing attacker ply yields
// nothing. Advisory only: FinalResult does not depend on it.
std::vector<IterationVerdict> IterationLog(const GameState& state, const MatchupMatrix& matrix);

}  // namespace dpgame

#endif  // DPGAME_JUDGE_H_
