// Python bindings. Structured results cross the boundary as JSON text and are
// decoded by the package's __init__.py.
#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dpgame/analytics.h"
#include "dpgame/matrix_game.h"
#include "dpgame/serialization.h"
#include "dpgame/service.h"
#include "dpgame/strategies.h"

namespace py = pybind11;
using namespace dpgame;

namespace {

const MatchupMatrix& DefaultMatrix() {
  static const MatchupMatrix m = SeededMatchupMatrix(Catalog::Default());
  return m;
}

Action MakeAction(const GameState& s, const std::string& token, const std::string& region,
                  std::optional<int> angle) {
  json j{{"token", token}, {"region", region}};
  if (angle) j["opening_angle"] = *angle;
  return ActionFromJson(j, Catalog::Default(), s.to_move());
}

PayoffMatrix View(const std::string& name) {
  if (name == "true") return MakePayoffMatrix(DefaultMatrix());
  if (name == "ignorant") return PayoffMatrix(kTokensPerRole, kTokensPerRole, kUnjudgedPayoff);
  throw ValidationError("unknown view '" + name + "' (expected true or ignorant)");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Data-protection awareness game engine";

  auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<IllegalMoveError>(m, "IllegalMoveError", base.ptr());
  py::register_exception<StateError>(m, "StateError", base.ptr());
  py::register_exception<NotFoundError>(m, "NotFoundError", base.ptr());
  py::register_exception<ReplayError>(m, "ReplayError", base.ptr());

  py::class_<GameState>(m, "Game")
      .def(py::init([](int budget, int usage_limit) {
             return GameState(GameConfig{budget, usage_limit});
           }),
           py::arg("budget") = kTokensPerRole, py::arg("usage_limit") = 2)
      .def_property_readonly("ply", &GameState::ply)
      .def_property_readonly("to_move",
                             [](const GameState& s) { return std::string(PlayerName(s.to_move())); })
      .def_property_readonly("is_terminal", &GameState::IsTerminal)
      .def_property_readonly("terminal_reason",
                             [](const GameState& s) -> std::optional<std::string> {
                               if (!s.terminal_reason()) return std::nullopt;
                               return std::string(TerminalReasonName(*s.terminal_reason()));
                             })
      .def("legal_actions",
           [](const GameState& s) {
             std::vector<std::string> out;
             for (const auto& a : s.LegalActions()) out.push_back(a.ToString());
             return out;
           })
      .def(
          "play",
          [](GameState& s, const std::string& token, const std::string& region,
             std::optional<int> opening_angle) {
            s.ApplyInPlace(MakeAction(s, token, region, opening_angle));
            return s.log().back().position.index;
          },
          py::arg("token"), py::arg("region"), py::arg("opening_angle") = py::none(),
          "Places a token for the side to move; returns the resolved position.")
      .def(
          "play_policy",
          [](GameState& s, const std::string& policy, std::uint64_t seed) {
            const Action a = ChooseAction(Policy::Parse(policy, seed), s, DefaultMatrix());
            s.ApplyInPlace(a);
            return a.ToString();
          },
          py::arg("policy"), py::arg("seed") = 0)
      .def("move_lines",
           [](const GameState& s) {
             std::vector<std::string> out;
             for (const auto& mv : s.log()) out.push_back(FormatMoveLine(mv));
             return out;
           })
      .def("score_json", [](const GameState& s) { return ToJson(ScoreBoard(s, DefaultMatrix())).dump(); })
      .def("report_json",
           [](const GameState& s) {
             return ToJson(MakeGameReport(s, DefaultMatrix(), Catalog::Default())).dump();
           })
      .def("state_json", [](const GameState& s) { return ToJson(s).dump(); })
      .def("render", &RenderBoard)
      .def("copy", [](const GameState& s) { return GameState(s); })
      .def("__eq__", [](const GameState& a, const GameState& b) { return a == b; });

  m.def(
      "replay_moves",
      [](const std::vector<std::string>& lines, int budget, int usage_limit) {
        return ReplayMoveLines(GameConfig{budget, usage_limit}, lines);
      },
      py::arg("lines"), py::arg("budget") = kTokensPerRole, py::arg("usage_limit") = 2);

  m.def("catalog_json", [] { return Catalog::Default().ToJson().dump(); });

  m.def(
      "judge_json",
      [](const std::string& attacker, const std::string& defender) {
        const Catalog& c = Catalog::Default();
        return ToJson(JudgeMatchup(DefaultMatrix(), c.Resolve(Player::kAttacker, attacker),
                                   c.Resolve(Player::kDefender, defender)))
            .dump();
      },
      py::arg("attacker"), py::arg("defender"));

  m.def(
      "solve_json",
      [](int iterations, double tolerance) {
        py::gil_scoped_release release;
        return ToJson(SolveMatrixGame(MakePayoffMatrix(DefaultMatrix()), iterations, tolerance))
            .dump();
      },
      py::arg("iterations") = 100000, py::arg("tolerance") = 0.0);

  m.def(
      "hypergame_json",
      [](const std::string& attacker_view, const std::string& defender_view, int iterations) {
        const PayoffMatrix pa = View(attacker_view);
        const PayoffMatrix pd = View(defender_view);
        py::gil_scoped_release release;
        return ToJson(HypergameEval(View("true"), pa, pd, iterations)).dump();
      },
      py::arg("attacker_view") = "true", py::arg("defender_view") = "true",
      py::arg("iterations") = 100000);

  m.def(
      "simulate_json",
      [](int games, const std::string& attacker, const std::string& defender, std::uint64_t seed,
         int threads) {
        TournamentConfig c;
        c.games = games;
        c.attacker = Policy::Parse(attacker, seed);
        c.defender = Policy::Parse(defender, seed);
        c.seed = seed;
        c.threads = threads;
        py::gil_scoped_release release;
        return ToJson(RunTournament(c, DefaultMatrix(), Catalog::Default())).dump();
      },
      py::arg("games"), py::arg("attacker") = "random", py::arg("defender") = "random",
      py::arg("seed") = 0, py::arg("threads") = 0);

  m.def(
      "replay_log_json",
      [](const std::string& path) {
        const ReplayResult r = SessionReplay(ReadEventLog(path));
        json j{{"session_id", r.session_id},
               {"status", r.status == SessionStatus::kOpen ? "Open" : "Finished"},
               {"state", ToJson(r.state)}};
        j["report"] = r.report ? ToJson(*r.report) : json(nullptr);
        return j.dump();
      },
      py::arg("path"));
}
