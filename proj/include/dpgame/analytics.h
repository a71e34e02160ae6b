#ifndef DPGAME_ANALYTICS_H_
#define DPGAME_ANALYTICS_H_

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dpgame/board.h"
#include "dpgame/catalog.h"
#include "dpgame/judge.h"
#include "dpgame/strategies.h"

namespace dpgame {

struct TrickCount {
  int wins = 0;
  int losses = 0;
  int played() const { return wins + losses; }
  friend bool operator==(const TrickCount&, const TrickCount&) = default;
};

struct GameReport {
  FinalResult final;
  std::vector<IterationVerdict> iterations;
  // Player shares of awarded points, in percent; both 0 when nothing was
  // awarded.
  double awareness_score = 0.0;
  double intrusion_score = 0.0;
  // Judged mixed matchups on the evaluation pairs, by the tags of the tokens
  // involved. Sequential bonuses carry no matchup and are not attributed.
  std::map<TrickTag, TrickCount> per_trick;
  int unjudged_count = 0;

  friend bool operator==(const GameReport&, const GameReport&) = default;
};

// Throws StateError on a non-terminal state.
GameReport MakeGameReport(const GameState& state, const MatchupMatrix& matrix,
                          const Catalog& catalog);
// Same report for a game stopped early (e.g. by resignation).
GameReport MakeGameReportUnchecked(const GameState& state, const MatchupMatrix& matrix,
                                   const Catalog& catalog);

struct TrickRow {
  TrickTag tag;
  int played = 0;
  int wins = 0;
  double win_rate = 0.0;  // wins / played
  friend bool operator==(const TrickRow&, const TrickRow&) = default;
};

struct TrickTable {
  std::vector<TrickRow> attacker;  // ordered by tag name
  std::vector<TrickRow> defender;
  friend bool operator==(const TrickTable&, const TrickTable&) = default;
};

TrickTable TrickBreakdown(std::span<const GameReport> reports);

struct TournamentConfig {
  int games = 1;
  Policy attacker = Policy::Random(0);
  Policy defender = Policy::Random(0);
  std::uint64_t seed = 0;  // game g uses seed + g for both seats
  GameConfig game;
  int threads = 0;  // 0 = hardware concurrency
};

struct SeatRecord {
  int wins = 0;
  int draws = 0;
  int losses = 0;
  friend bool operator==(const SeatRecord&, const SeatRecord&) = default;
};

struct TokenStats {
  int placements = 0;
  int wins = 0;     // judged mixed matchups won
  int matchups = 0; // judged mixed matchups involved in
  double win_rate() const { return matchups == 0 ? 0.0 : static_cast<double>(wins) / matchups; }
  friend bool operator==(const TokenStats&, const TokenStats&) = default;
};

struct TournamentSummary {
  int games = 0;
  std::string attacker_policy;
  std::string defender_policy;
  SeatRecord attacker_record;
  SeatRecord defender_record;
  long long attacker_points = 0;
  long long defender_points = 0;
  double mean_attacker_score = 0.0;
  double mean_defender_score = 0.0;
  double mean_awareness = 0.0;
  double mean_intrusion = 0.0;
  long long total_placements = 0;
  std::map<TokenId, TokenStats> tokens;
  TrickTable tricks;

  friend bool operator==(const TournamentSummary&, const TournamentSummary&) = default;
};

// Plays one complete game between two policies.
GameState PlayGame(const Policy& attacker, const Policy& defender, const MatchupMatrix& matrix,
                   const GameConfig& config = {});

// Aggregates already-played games. Independent of the order of `reports`
// because it only sums.
TournamentSummary Summarize(std::span<const GameState> games,
                            std::span<const GameReport> reports, const std::string& attacker,
                            const std::string& defender);

// Plays config.games games (in parallel) and aggregates them. Deterministic
// given the config. Throws ValidationError if games < 1.
TournamentSummary RunTournament(const TournamentConfig& config, const MatchupMatrix& matrix,
                                const Catalog& catalog);

}  // namespace dpgame

#endif  // DPGAME_ANALYTICS_H_
