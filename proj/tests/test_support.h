// Helpers shared by the test binaries.
#ifndef DPGAME_TESTS_TEST_SUPPORT_H_
#define DPGAME_TESTS_TEST_SUPPORT_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dpgame/board.h"
#include "dpgame/catalog.h"
#include "oracle/published_table.h"

namespace testing_support {

using namespace dpgame;

inline const MatchupMatrix& DefaultMatrix() {
  static const MatchupMatrix m = SeededMatchupMatrix(Catalog::Default());
  return m;
}

// Plays uniformly random legal moves, stopping after max_plies or at the end.
inline GameState RandomPrefix(std::uint64_t seed, int max_plies = kNumPositions,
                              const GameConfig& config = {}) {
  std::mt19937_64 rng(seed);
  GameState s(config);
  while (!s.IsTerminal() && s.ply() < max_plies) {
    const auto legal = s.LegalActions();
    std::uniform_int_distribution<std::size_t> pick(0, legal.size() - 1);
    s.ApplyInPlace(legal[pick(rng)]);
  }
  return s;
}

// A random, usually mid-game, state.
inline GameState RandomState(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const int plies = std::uniform_int_distribution<int>(0, kNumPositions - 1)(rng);
  return RandomPrefix(seed, plies);
}

// Every syntactically possible action for one role: all tokens, all
// regions, with and without each opening angle.
inline std::vector<Action> CandidateActions(Player role) {
  std::vector<Action> out;
  for (int t = 1; t <= kTokensPerRole; ++t) {
    for (Region r : {Region::kCenter, Region::kInner, Region::kMiddle, Region::kOuter}) {
      out.push_back(Action{TokenId{role, t}, r, std::nullopt});
      for (int a = 0; a <= kAnglesPerRing + 1; ++a) {
        out.push_back(Action{TokenId{role, t}, r, a});
      }
    }
  }
  return out;
}

// Independent check of the ring rule: within each ring, the angles read in
// placement order advance strictly clockwise from the first one.
inline bool ClockwiseHolds(const GameState& s) {
  std::vector<int> angles[4];
  for (const auto& m : s.log()) {
    const int idx = m.position.index;
    if (idx == 25) continue;
    angles[(idx - 1) / 8 + 1].push_back((idx - 1) % 8 + 1);
  }
  for (const auto& ring : angles) {
    if (ring.empty()) continue;
    int prev = 0;
    for (std::size_t i = 1; i < ring.size(); ++i) {
      const int offset = ((ring[i] - ring[0]) % 8 + 8) % 8;
      if (offset <= prev) return false;
      // No skipped empty angle: every angle strictly between the previous
      // placement and this one was already occupied when this one landed.
      for (int k = prev + 1; k < offset; ++k) {
        const int angle = (ring[0] - 1 + k) % 8 + 1;
        bool taken_before = false;
        for (std::size_t j = 0; j < i; ++j) taken_before |= ring[j] == angle;
        if (!taken_before) return false;
      }
      prev = offset;
    }
  }
  return true;
}

// Independent points for one pair, using only the transcribed table.
inline std::pair<int, int> OraclePairPoints(const GameState& s, const EvaluationPair& pair) {
  const auto& x = s.cell(pair.a);
  const auto& y = s.cell(pair.b);
  if (!x || !y) return {0, 0};
  if (x->player == y->player) {
    return x->player == Player::kAttacker ? std::pair{2, 0} : std::pair{0, 2};
  }
  const TokenId a = x->player == Player::kAttacker ? x->token : y->token;
  const TokenId d = x->player == Player::kAttacker ? y->token : x->token;
  for (std::size_t i = 0; i < oracle::kPublishedIds.size(); ++i) {
    if (oracle::kPublishedIds[i][0] == a.index && oracle::kPublishedIds[i][1] == d.index) {
      return {oracle::kPublishedTable[i].a_points, oracle::kPublishedTable[i].d_points};
    }
  }
  return {0, 0};
}

inline std::vector<std::string> MoveLines(const GameState& s) {
  std::vector<std::string> lines;
  for (const auto& m : s.log()) lines.push_back(FormatMoveLine(m));
  return lines;
}

// A full legal game ending 7-9, defender ahead.
inline const std::vector<std::string>& DefenderNineSevenGame() {
  static const std::vector<std::string> lines = {
      "0,Attacker,A4,Middle,14",  "1,Defender,D7,Outer,18",   "2,Attacker,A4,Inner,4",
      "3,Defender,D8,Center,25",  "4,Attacker,A8,Middle,15",  "5,Defender,D9,Middle,16",
      "6,Attacker,A12,Inner,5",   "7,Defender,D2,Inner,6",    "8,Attacker,A5,Inner,7",
      "9,Defender,D10,Inner,8",   "10,Attacker,A6,Inner,1",   "11,Defender,D8,Middle,9",
      "12,Attacker,A8,Outer,19",  "13,Defender,D9,Outer,20",  "14,Attacker,A3,Middle,10",
      "15,Defender,D2,Outer,21",  "16,Attacker,A10,Inner,2",  "17,Defender,D5,Inner,3",
      "18,Attacker,A7,Outer,22",  "19,Defender,D7,Outer,23",  "20,Attacker,A1,Outer,24",
      "21,Defender,D12,Middle,11", "22,Attacker,A6,Outer,17", "23,Defender,D4,Middle,12",
      "24,Attacker,A5,Middle,13",
  };
  return lines;
}

// A full legal game ending 9-17, defender ahead.
inline const std::vector<std::string>& DefenderSeventeenNineGame() {
  static const std::vector<std::string> lines = {
      "0,Attacker,A7,Outer,21",   "1,Defender,D10,Middle,13", "2,Attacker,A3,Inner,7",
      "3,Defender,D4,Center,25",  "4,Attacker,A10,Outer,22",  "5,Defender,D1,Inner,8",
      "6,Attacker,A7,Inner,1",    "7,Defender,D1,Inner,2",    "8,Attacker,A8,Outer,23",
      "9,Defender,D2,Inner,3",    "10,Attacker,A3,Inner,4",   "11,Defender,D2,Inner,5",
      "12,Attacker,A12,Middle,14", "13,Defender,D3,Inner,6",  "14,Attacker,A13,Middle,15",
      "15,Defender,D3,Middle,16", "16,Attacker,A1,Middle,9",  "17,Defender,D4,Outer,24",
      "18,Attacker,A2,Outer,17",  "19,Defender,D5,Middle,10", "20,Attacker,A12,Middle,11",
      "21,Defender,D5,Outer,18",  "22,Attacker,A5,Outer,19",  "23,Defender,D6,Middle,12",
      "24,Attacker,A10,Outer,20",
  };
  return lines;
}

}  // namespace testing_support

#endif  // DPGAME_TESTS_TEST_SUPPORT_H_
