#include "dpgame/analytics.h"

#include <algorithm>
#include <numeric>
#include <thread>

namespace dpgame {
namespace {

double Share(int mine, int theirs) {
  const int total = mine + theirs;
  return total == 0 ? 0.0 : 100.0 * mine / total;
}

// Sums after sorting so the result does not depend on input order.
double OrderFreeMean(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

std::vector<TrickRow> SortedRows(const std::map<TrickTag, TrickCount>& counts, Player side) {
  std::vector<TrickRow> rows;
  for (const auto& [tag, c] : counts) {
    if (TrickTagSide(tag) != side || c.played() == 0) continue;
    rows.push_back(TrickRow{tag, c.played(), c.wins,
                            static_cast<double>(c.wins) / static_cast<double>(c.played())});
  }
  std::sort(rows.begin(), rows.end(), [](const TrickRow& a, const TrickRow& b) {
    return TrickTagName(a.tag) < TrickTagName(b.tag);
  });
  return rows;
}

}  // namespace

GameReport MakeGameReportUnchecked(const GameState& state, const MatchupMatrix& matrix,
                                   const Catalog& catalog) {
  GameReport report;
  report.final = ScoreBoard(state, matrix);
  report.iterations = IterationLog(state, matrix);
  report.awareness_score = Share(report.final.defender_total, report.final.attacker_total);
  report.intrusion_score = Share(report.final.attacker_total, report.final.defender_total);

  for (const auto& event : report.final.events) {
    if (event.kind == ScoreKind::kUnjudgedMatchup) ++report.unjudged_count;
    if (event.kind != ScoreKind::kMixedMatchup) continue;
    const Occupant& x = *state.cell(event.pair.a);
    const Occupant& y = *state.cell(event.pair.b);
    for (const Occupant& o : {x, y}) {
      TrickCount& c = report.per_trick[catalog.token(o.token).trick];
      (event.points(o.player) > 0 ? c.wins : c.losses) += 1;
    }
  }
  return report;
}

GameReport MakeGameReport(const GameState& state, const MatchupMatrix& matrix,
                          const Catalog& catalog) {
  if (!state.IsTerminal()) throw StateError("game is not over");
  return MakeGameReportUnchecked(state, matrix, catalog);
}

TrickTable TrickBreakdown(std::span<const GameReport> reports) {
  std::map<TrickTag, TrickCount> totals;
  for (const auto& r : reports) {
    for (const auto& [tag, c] : r.per_trick) {
      totals[tag].wins += c.wins;
      totals[tag].losses += c.losses;
    }
  }
  return TrickTable{SortedRows(totals, Player::kAttacker), SortedRows(totals, Player::kDefender)};
}

GameState PlayGame(const Policy& attacker, const Policy& defender, const MatchupMatrix& matrix,
                   const GameConfig& config) {
  GameState state(config);
  while (!state.IsTerminal()) {
    const Policy& p = state.to_move() == Player::kAttacker ? attacker : defender;
    state.ApplyInPlace(ChooseAction(p, state, matrix));
  }
  return state;
}

TournamentSummary Summarize(std::span<const GameState> games,
                            std::span<const GameReport> reports, const std::string& attacker,
                            const std::string& defender) {
  TournamentSummary s;
  s.games = static_cast<int>(reports.size());
  s.attacker_policy = attacker;
  s.defender_policy = defender;
  std::vector<double> awareness;
  std::vector<double> intrusion;
  for (const auto& r : reports) {
    switch (r.final.outcome) {
      case Outcome::kAttackerWin:
        ++s.attacker_record.wins;
        ++s.defender_record.losses;
        break;
      case Outcome::kDefenderWin:
        ++s.defender_record.wins;
        ++s.attacker_record.losses;
        break;
      case Outcome::kDraw:
        ++s.attacker_record.draws;
        ++s.defender_record.draws;
        break;
    }
    s.attacker_points += r.final.attacker_total;
    s.defender_points += r.final.defender_total;
    awareness.push_back(r.awareness_score);
    intrusion.push_back(r.intrusion_score);
  }
  if (s.games > 0) {
    s.mean_attacker_score = static_cast<double>(s.attacker_points) / s.games;
    s.mean_defender_score = static_cast<double>(s.defender_points) / s.games;
  }
  s.mean_awareness = OrderFreeMean(std::move(awareness));
  s.mean_intrusion = OrderFreeMean(std::move(intrusion));

  for (std::size_t g = 0; g < games.size(); ++g) {
    const GameState& state = games[g];
    for (const auto& move : state.log()) {
      ++s.tokens[move.action.token].placements;
      ++s.total_placements;
    }
    for (const auto& event : reports[g].final.events) {
      if (event.kind != ScoreKind::kMixedMatchup) continue;
      for (Position p : {event.pair.a, event.pair.b}) {
        const Occupant& o = *state.cell(p);
        TokenStats& t = s.tokens[o.token];
        ++t.matchups;
        if (event.points(o.player) > 0) ++t.wins;
      }
    }
  }
  s.tricks = TrickBreakdown(reports);
  return s;
}

TournamentSummary RunTournament(const TournamentConfig& config, const MatchupMatrix& matrix,
                                const Catalog& catalog) {
  if (config.games < 1) throw ValidationError("games must be >= 1");
  config.game.Validate();
  const int n = config.games;
  std::vector<GameState> games(n, GameState(config.game));
  std::vector<GameReport> reports(n);

  auto play = [&](int g) {
    Policy attacker = config.attacker;
    Policy defender = config.defender;
    attacker.seed = defender.seed = config.seed + static_cast<std::uint64_t>(g);
    games[g] = PlayGame(attacker, defender, matrix, config.game);
    reports[g] = MakeGameReport(games[g], matrix, catalog);
  };

  int threads = config.threads > 0 ? config.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, n);
  if (threads == 1) {
    for (int g = 0; g < n; ++g) play(g);
  } else {
    // Games are independent; each worker owns a strided slice of the output.
    std::vector<std::jthread> workers;
    for (int w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        for (int g = w; g < n; g += threads) play(g);
      });
    }
  }
  return Summarize(games, reports, config.attacker.Name(), config.defender.Name());
}

}  // namespace dpgame
