#ifndef DPGAME_SERIALIZATION_H_
#define DPGAME_SERIALIZATION_H_

#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "dpgame/analytics.h"
#include "dpgame/board.h"
#include "dpgame/catalog.h"
#include "dpgame/judge.h"
#include "dpgame/matrix_game.h"

namespace dpgame {

using nlohmann::json;

json ToJson(const GameConfig& config);
GameConfig GameConfigFromJson(const json& j);

json ToJson(const Action& action);
// Accepts {"token": "D5" | name, "region": "Center", "opening_angle": n}.
// Names resolve against `catalog` for the given role.
Action ActionFromJson(const json& j, const Catalog& catalog, Player role);

json ToJson(const MoveRecord& move);
// Public board view: cells, cursors, counts, turn, terminal reason.
json ToJson(const GameState& state);

json ToJson(const Verdict& verdict);
json ToJson(const ScoreEvent& event);
json ToJson(const FinalResult& result);
json ToJson(const IterationVerdict& iteration);
json ToJson(const GameReport& report);
json ToJson(const TrickTable& table);
json ToJson(const TournamentSummary& summary);

// Keys are token ids when the strategy has 13 entries, indices otherwise.
json ToJson(const MixedStrategy& strategy, Player role);
json ToJson(const EquilibriumReport& report);
json ToJson(const HypergameReport& report);

json PsychFactorsJson();

// token,probability rows for both sides.
std::string EquilibriumCsv(const EquilibriumReport& report);
std::string TournamentCsv(const TournamentSummary& summary);
std::string ReportCsv(const GameReport& report, const Catalog& catalog);

// Scoring table laid out like the published one:
// Iteration | A | D | A% | D% | Judge | Comments.
std::string RenderIterationTable(std::span<const IterationVerdict> iterations,
                                 const Catalog& catalog);
std::string RenderTrickTable(const TrickTable& table);
std::string RenderBoard(const GameState& state);

}  // namespace dpgame

#endif  // DPGAME_SERIALIZATION_H_
