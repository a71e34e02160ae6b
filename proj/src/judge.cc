#include "dpgame/judge.h"

namespace dpgame {

Verdict JudgeMatchup(const MatchupMatrix& matrix, TokenId attacker, TokenId defender) {
  if (attacker.role != Player::kAttacker || defender.role != Player::kDefender) {
    throw ValidationError("role mismatch: cannot judge " + attacker.ToString() + " vs " +
                          defender.ToString());
  }
  const MatchupEntry* entry = matrix.Find(attacker, defender);
  if (entry == nullptr) return Verdict{std::nullopt, VerdictSource::kUnjudged, ""};
  return Verdict{entry->winner, VerdictSource::kJudged, entry->comment};
}

std::string_view ScoreKindName(ScoreKind k) {
  switch (k) {
    case ScoreKind::kMixedMatchup:
      return "MixedMatchup";
    case ScoreKind::kSequentialBonus:
      return "SequentialBonus";
    case ScoreKind::kIncomplete:
      return "Incomplete";
    case ScoreKind::kUnjudgedMatchup:
      return "UnjudgedMatchup";
  }
  return "";
}

std::string_view OutcomeName(Outcome o) {
  switch (o) {
    case Outcome::kAttackerWin:
      return "AttackerWin";
    case Outcome::kDefenderWin:
      return "DefenderWin";
    case Outcome::kDraw:
      return "Draw";
  }
  return "";
}

ScoreEvent EvaluatePair(const GameState& state, const EvaluationPair& pair,
                        const MatchupMatrix& matrix) {
  ScoreEvent event{pair, ScoreKind::kIncomplete, 0, 0, ""};
  const auto& x = state.cell(pair.a);
  const auto& y = state.cell(pair.b);
  if (!x || !y) return event;

  if (x->player == y->player) {
    event.kind = ScoreKind::kSequentialBonus;
    (x->player == Player::kAttacker ? event.attacker_points : event.defender_points) = 2;
    return event;
  }

  const TokenId attacker = x->player == Player::kAttacker ? x->token : y->token;
  const TokenId defender = x->player == Player::kAttacker ? y->token : x->token;
  Verdict v = JudgeMatchup(matrix, attacker, defender);
  if (v.source == VerdictSource::kUnjudged) {
    event.kind = ScoreKind::kUnjudgedMatchup;
    return event;
  }
  event.kind = ScoreKind::kMixedMatchup;
  (*v.winner == Player::kAttacker ? event.attacker_points : event.defender_points) = 1;
  event.comment = std::move(v.comment);
  return event;
}

FinalResult ScoreBoard(const GameState& state, const MatchupMatrix& matrix) {
  FinalResult result;
  for (const auto& pair : BoardTopology().pairs) {
    result.events.push_back(EvaluatePair(state, pair, matrix));
    result.attacker_total += result.events.back().attacker_points;
    result.defender_total += result.events.back().defender_points;
  }
  if (result.attacker_total > result.defender_total) {
    result.outcome = Outcome::kAttackerWin;
  } else if (result.defender_total > result.attacker_total) {
    result.outcome = Outcome::kDefenderWin;
  } else {
    result.outcome = Outcome::kDraw;
  }
  return result;
}

FinalResult ComputeFinalResult(const GameState& state, const MatchupMatrix& matrix) {
  if (!state.IsTerminal()) throw StateError("game is not over");
  return ScoreBoard(state, matrix);
}

int ScoreDifferential(const GameState& state, const MatchupMatrix& matrix, Player perspective) {
  int attacker = 0;
  int defender = 0;
  for (const auto& pair : BoardTopology().pairs) {
    const auto& x = state.cell(pair.a);
    const auto& y = state.cell(pair.b);
    if (!x || !y) continue;
    if (x->player == y->player) {
      (x->player == Player::kAttacker ? attacker : defender) += 2;
      continue;
    }
    const TokenId a = x->player == Player::kAttacker ? x->token : y->token;
    const TokenId d = x->player == Player::kAttacker ? y->token : x->token;
    if (const MatchupEntry* e = matrix.Find(a, d)) {
      (e->winner == Player::kAttacker ? attacker : defender) += 1;
    }
  }
  return perspective == Player::kAttacker ? attacker - defender : defender - attacker;
}

std::vector<IterationVerdict> JudgeIterations(
    std::span<const std::pair<TokenId, TokenId>> matchups, const MatchupMatrix& matrix) {
  std::vector<IterationVerdict> out;
  out.reserve(matchups.size());
  int iteration = 1;
  for (const auto& [a, d] : matchups) {
    IterationVerdict iv{iteration++, a, d, JudgeMatchup(matrix, a, d), 0, 0};
    if (iv.verdict.winner) {
      (*iv.verdict.winner == Player::kAttacker ? iv.a_points : iv.d_points) = 1;
    }
    out.push_back(std::move(iv));
  }
  return out;
}

std::vector<IterationVerdict> IterationLog(const GameState& state, const MatchupMatrix& matrix) {
  std::vector<std::pair<TokenId, TokenId>> matchups;
  const auto log = state.log();
  for (std::size_t k = 0; k + 1 < log.size(); k += 2) {
    matchups.emplace_back(log[k].action.token, log[k + 1].action.token);
  }
  return JudgeIterations(matchups, matrix);
}

}  // namespace dpgame
