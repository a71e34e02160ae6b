#include <doctest.h>

#include "dpgame/judge.h"
#include "oracle/published_table.h"
#include "test_support.h"

using namespace dpgame;
using testing_support::DefaultMatrix;
using testing_support::OraclePairPoints;
using testing_support::RandomPrefix;

namespace {

Action Act(const char* token, Region r, std::optional<int> angle = std::nullopt) {
  return Action{TokenId::Parse(token), r, angle};
}

}  // namespace

TEST_CASE("judge matchup") {
  const auto& m = DefaultMatrix();
  const Verdict v2 = JudgeMatchup(m, TokenId::Parse("A11"), TokenId::Parse("D1"));
  CHECK(v2.winner == Player::kDefender);
  CHECK(v2.source == VerdictSource::kJudged);
  CHECK(v2.comment == "Denied malicious link");

  const Verdict v17 = JudgeMatchup(m, TokenId::Parse("A10"), TokenId::Parse("D8"));
  CHECK(v17.winner == Player::kAttacker);
  CHECK(v17.comment == "The defender lost information");

  const Verdict none = JudgeMatchup(m, TokenId::Parse("A1"), TokenId::Parse("D13"));
  CHECK_FALSE(none.winner.has_value());
  CHECK(none.source == VerdictSource::kUnjudged);

  CHECK_THROWS_AS(JudgeMatchup(m, TokenId::Parse("D1"), TokenId::Parse("A1")), ValidationError);
}

TEST_CASE("published table replays through the judge") {
  std::vector<std::pair<TokenId, TokenId>> pairs;
  for (const auto& ids : oracle::kPublishedIds) {
    pairs.emplace_back(TokenId{Player::kAttacker, ids[0]}, TokenId{Player::kDefender, ids[1]});
  }
  const auto verdicts = JudgeIterations(pairs, DefaultMatrix());
  REQUIRE(verdicts.size() == 26);
  int a = 0, d = 0;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    const auto& row = oracle::kPublishedTable[i];
    CAPTURE(row.iteration);
    CHECK(verdicts[i].iteration == row.iteration);
    CHECK(verdicts[i].verdict.source == VerdictSource::kJudged);
    CHECK(verdicts[i].verdict.winner ==
          (row.a_points == 1 ? Player::kAttacker : Player::kDefender));
    CHECK(verdicts[i].verdict.comment == row.comment);
    CHECK(verdicts[i].a_points == row.a_points);
    CHECK(verdicts[i].d_points == row.d_points);
    a += verdicts[i].a_points;
    d += verdicts[i].d_points;
  }
  CHECK(a == 9);
  CHECK(d == 17);
  CHECK(JudgeIterations({}, DefaultMatrix()).empty());
}

TEST_CASE("pair evaluation") {
  const auto& m = DefaultMatrix();
  const auto& pairs = BoardTopology().pairs;

  SUBCASE("two defender tokens on one pair earn the bonus") {
    GameState s;
    s.ApplyInPlace(Act("A1", Region::kMiddle, 1));
    s.ApplyInPlace(Act("D10", Region::kCenter));
    s.ApplyInPlace(Act("A2", Region::kOuter, 1));
    s.ApplyInPlace(Act("D7", Region::kInner, 1));
    const ScoreEvent e = EvaluatePair(s, pairs[0], m);  // (25, 1)
    CHECK(e.kind == ScoreKind::kSequentialBonus);
    CHECK(e.defender_points == 2);
    CHECK(e.attacker_points == 0);
    const ScoreEvent f = EvaluatePair(s, pairs[1], m);  // (9, 17), both attacker
    CHECK(f.kind == ScoreKind::kSequentialBonus);
    CHECK(f.attacker_points == 2);
  }
  SUBCASE("mixed judged pair") {
    GameState s;
    s.ApplyInPlace(Act("A1", Region::kMiddle, 1));
    s.ApplyInPlace(Act("D5", Region::kOuter, 1));
    const ScoreEvent e = EvaluatePair(s, pairs[1], m);
    CHECK(e.kind == ScoreKind::kMixedMatchup);
    CHECK(e.defender_points == 1);
    CHECK(e.attacker_points == 0);
    CHECK(e.comment == "Never trust malicious emails");
    // (10, 18) is empty.
    const ScoreEvent g = EvaluatePair(s, pairs[9], m);
    CHECK(g.kind == ScoreKind::kIncomplete);
    CHECK(g.points(Player::kAttacker) + g.points(Player::kDefender) == 0);
  }
  SUBCASE("half-filled pair") {
    GameState s;
    s.ApplyInPlace(Act("A1", Region::kMiddle, 2));
    CHECK(EvaluatePair(s, pairs[9], m).kind == ScoreKind::kIncomplete);
  }
  SUBCASE("mixed unjudged pair") {
    GameState s;
    s.ApplyInPlace(Act("A1", Region::kCenter));
    s.ApplyInPlace(Act("D13", Region::kInner, 1));
    const ScoreEvent e = EvaluatePair(s, pairs[0], m);
    CHECK(e.kind == ScoreKind::kUnjudgedMatchup);
    CHECK(e.attacker_points == 0);
    CHECK(e.defender_points == 0);
  }
}

TEST_CASE("final result") {
  const auto& m = DefaultMatrix();
  CHECK_THROWS_AS(ComputeFinalResult(NewGame(), m), StateError);

  SUBCASE("degenerate empty game") {
    const FinalResult r = ComputeFinalResult(GameState(GameConfig{0, 2}), m);
    REQUIRE(r.events.size() == 16);
    for (const auto& e : r.events) CHECK(e.kind == ScoreKind::kIncomplete);
    CHECK(r.attacker_total == 0);
    CHECK(r.defender_total == 0);
    CHECK(r.outcome == Outcome::kDraw);
  }
  SUBCASE("scripted game won 9-7 by the defender") {
    const GameState s = ReplayMoveLines(GameConfig{}, testing_support::DefenderNineSevenGame());
    REQUIRE(s.IsTerminal());
    int a = 0, d = 0;
    for (const auto& pair : BoardTopology().pairs) {
      const auto [pa, pd] = OraclePairPoints(s, pair);
      a += pa;
      d += pd;
    }
    CHECK(a == 7);
    CHECK(d == 9);
    const FinalResult r = ComputeFinalResult(s, m);
    CHECK(r.attacker_total == 7);
    CHECK(r.defender_total == 9);
    CHECK(r.outcome == Outcome::kDefenderWin);
  }
}

TEST_CASE("scoring properties over random games") {
  const auto& m = DefaultMatrix();
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const GameState s = RandomPrefix(seed);
    const FinalResult r = ComputeFinalResult(s, m);
    REQUIRE(r.events.size() == 16);
    int a = 0, d = 0, independent_a = 0, independent_d = 0;
    for (std::size_t i = 0; i < r.events.size(); ++i) {
      const auto& e = r.events[i];
      const std::pair<int, int> pts{e.attacker_points, e.defender_points};
      switch (e.kind) {
        case ScoreKind::kMixedMatchup:
          REQUIRE((pts == std::pair{1, 0} || pts == std::pair{0, 1}));
          break;
        case ScoreKind::kSequentialBonus:
          REQUIRE((pts == std::pair{2, 0} || pts == std::pair{0, 2}));
          break;
        default:
          REQUIRE(pts == std::pair{0, 0});
      }
      REQUIRE(pts == OraclePairPoints(s, BoardTopology().pairs[i]));
      a += e.attacker_points;
      d += e.defender_points;
      const ScoreEvent alone = EvaluatePair(s, BoardTopology().pairs[i], m);
      independent_a += alone.attacker_points;
      independent_d += alone.defender_points;
    }
    REQUIRE(a == r.attacker_total);
    REQUIRE(d == r.defender_total);
    REQUIRE(independent_a == a);
    REQUIRE(independent_d == d);
    REQUIRE(a + d <= 32);
    REQUIRE((r.outcome == Outcome::kDraw) == (a == d));
    REQUIRE(ScoreDifferential(s, m, Player::kDefender) == d - a);
    REQUIRE(ScoreDifferential(s, m, Player::kAttacker) == a - d);
    REQUIRE(ComputeFinalResult(s, m) == r);
  }
}

TEST_CASE("completed pairs never decrease as the board fills") {
  const auto& m = DefaultMatrix();
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const GameState full = RandomPrefix(seed);
    GameState s;
    int previous = 0;
    for (const auto& move : full.log()) {
      s.ApplyInPlace(move.action);
      int complete = 0;
      for (const auto& e : ScoreBoard(s, m).events) complete += e.kind != ScoreKind::kIncomplete;
      REQUIRE(complete >= previous);
      previous = complete;
    }
  }
}

TEST_CASE("iteration log") {
  const auto& m = DefaultMatrix();
  CHECK(IterationLog(NewGame(), m).empty());

  GameState s;
  s.ApplyInPlace(Act("A1", Region::kInner, 1));
  CHECK(IterationLog(s, m).empty());  // attacker move awaiting a reply
  s.ApplyInPlace(Act("D5", Region::kCenter));
  s.ApplyInPlace(Act("A2", Region::kMiddle, 4));
  const auto log = IterationLog(s, m);
  REQUIRE(log.size() == 1);
  CHECK(log[0].iteration == 1);
  CHECK(log[0].attacker_token == TokenId::Parse("A1"));
  CHECK(log[0].defender_token == TokenId::Parse("D5"));
  CHECK(log[0].d_points == 1);
  CHECK(log[0].verdict.comment == "Never trust malicious emails");
}
