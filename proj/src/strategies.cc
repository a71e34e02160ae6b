#include "dpgame/strategies.h"

#include <algorithm>
#include <charconv>
#include <limits>
#include <random>

#include "dpgame/judge.h"

namespace dpgame {
namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

Action RandomAction(std::uint64_t seed, const GameState& state) {
  const auto actions = state.LegalActions();
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(state.ply())};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<std::size_t> pick(0, actions.size() - 1);
  return actions[pick(rng)];
}

class AlphaBeta {
 public:
  AlphaBeta(const MatchupMatrix& matrix, Player root) : matrix_(matrix), root_(root) {}

  int Search(const GameState& state, int depth, int alpha, int beta) {
    if (depth == 0 || state.IsTerminal()) return ScoreDifferential(state, matrix_, root_);
    const bool maximizing = state.to_move() == root_;
    int best = maximizing ? std::numeric_limits<int>::min() : std::numeric_limits<int>::max();
    for (const Action& a : state.LegalActions()) {
      const int v = Search(state.Apply(a), depth - 1, alpha, beta);
      if (maximizing) {
        best = std::max(best, v);
        alpha = std::max(alpha, v);
      } else {
        best = std::min(best, v);
        beta = std::min(beta, v);
      }
      if (alpha >= beta) break;
    }
    return best;
  }

 private:
  const MatchupMatrix& matrix_;
  Player root_;
};

Action GreedyAction(const GameState& state, const MatchupMatrix& matrix) {
  const Player mover = state.to_move();
  const auto actions = state.LegalActions();
  std::size_t best = 0;
  int best_value = std::numeric_limits<int>::min();
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const int v = ScoreDifferential(state.Apply(actions[i]), matrix, mover);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  return actions[best];
}

Action SearchRoot(const GameState& state, const MatchupMatrix& matrix, int depth) {
  const Player root = state.to_move();
  AlphaBeta search(matrix, root);
  const auto actions = state.LegalActions();
  int alpha = std::numeric_limits<int>::min();
  const int beta = std::numeric_limits<int>::max();
  std::size_t best = 0;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const int v = search.Search(state.Apply(actions[i]), depth - 1, alpha, beta);
    // Strict improvement only: earlier actions win ties.
    if (i == 0 || v > alpha) {
      alpha = v;
      best = i;
    }
  }
  return actions[best];
}

}  // namespace

Policy Policy::Parse(std::string_view name, std::uint64_t seed) {
  const std::string l = Lower(name);
  if (l == "random") return Random(seed);
  if (l == "greedy") return Greedy();
  if (l == "minimax") return Minimax(2);
  if (l.rfind("minimax:", 0) == 0) {
    int depth = 0;
    const char* first = l.data() + 8;
    const char* last = l.data() + l.size();
    auto [ptr, ec] = std::from_chars(first, last, depth);
    if (ec == std::errc() && ptr == last && depth >= 1) return Minimax(depth);
  }
  throw ValidationError("unknown policy '" + std::string(name) + "'");
}

std::string Policy::Name() const {
  switch (kind) {
    case PolicyKind::kRandom:
      return "random";
    case PolicyKind::kGreedy:
      return "greedy";
    case PolicyKind::kMinimax:
      return "minimax:" + std::to_string(depth);
  }
  return "";
}

Action ChooseAction(const Policy& policy, const GameState& state, const MatchupMatrix& matrix) {
  if (state.IsTerminal()) throw StateError("game is over");
  switch (policy.kind) {
    case PolicyKind::kRandom:
      return RandomAction(policy.seed, state);
    case PolicyKind::kGreedy:
      return GreedyAction(state, matrix);
    case PolicyKind::kMinimax:
      if (policy.depth < 1) throw ValidationError("minimax depth must be >= 1");
      return SearchRoot(state, matrix, policy.depth);
  }
  throw ValidationError("unknown policy kind");
}

}  // namespace dpgame
