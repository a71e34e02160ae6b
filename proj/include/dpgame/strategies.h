#ifndef DPGAME_STRATEGIES_H_
#define DPGAME_STRATEGIES_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "dpgame/board.h"
#include "dpgame/catalog.h"

namespace dpgame {

enum class PolicyKind : std::uint8_t { kRandom, kGreedy, kMinimax };

struct Policy {
  PolicyKind kind = PolicyKind::kGreedy;
  int depth = 1;           // Minimax only, plies >= 1
  std::uint64_t seed = 0;  // Random only

  static Policy Random(std::uint64_t seed) { return {PolicyKind::kRandom, 1, seed}; }
  static Policy Greedy() { return {PolicyKind::kGreedy, 1, 0}; }
  static Policy Minimax(int depth) { return {PolicyKind::kMinimax, depth, 0}; }

  // "random", "greedy", "minimax" (depth 2) or "minimax:N". Throws
  // ValidationError("unknown policy '...'") for anything else.
  static Policy Parse(std::string_view name, std::uint64_t seed = 0);
  std::string Name() const;

  friend bool operator==(const Policy&, const Policy&) = default;
};

// Picks a member of LegalActions(state).
//
// Random draws uniformly with a generator seeded from (seed, ply), so the
// choice is a pure function of its inputs and replays reproduce it.
//
// Greedy maximises (own - opponent) points of the board scored as if the game
// ended after the move; incomplete pairs count zero. Ties go to the action
// listed first by LegalActions: lowest token index, then Center < Inner <
// Middle < Outer, then lowest opening angle.
//
// Minimax runs alpha-beta to `depth` plies with the same leaf evaluation from
// the root mover's perspective and the same root tie-breaking, so depth 1 is
// Greedy.
//
// Throws StateError on a terminal state.
Action ChooseAction(const Policy& policy, const GameState& state, const MatchupMatrix& matrix);

}  // namespace dpgame

#endif  // DPGAME_STRATEGIES_H_
