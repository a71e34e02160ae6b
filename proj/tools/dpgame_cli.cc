// Command-line front end: play, simulate, solve, hypergame, report, serve.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dpgame/analytics.h"
#include "dpgame/catalog.h"
#include "dpgame/http_server.h"
#include "dpgame/matrix_game.h"
#include "dpgame/serialization.h"
#include "dpgame/service.h"

namespace {

using dpgame::json;

constexpr int kUsageExit = 2;

const dpgame::Catalog& CatalogFor(const std::string& path, dpgame::Catalog& storage) {
  if (path.empty() || path == "default") return dpgame::Catalog::Default();
  storage = dpgame::Catalog::LoadFile(path);
  return storage;
}

void Emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw dpgame::Error("cannot write " + out_path);
  out << text;
}

std::vector<std::string> Words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

void PrintLegal(const json& view) {
  std::cout << "tokens:";
  for (const auto& t : view["legal"]["tokens"]) std::cout << ' ' << t.get<std::string>();
  std::cout << "\nregions:";
  for (const auto& r : view["legal"]["regions"]) {
    std::cout << ' ' << r["region"].get<std::string>();
    if (!r["opening_angles"].is_null()) std::cout << "(angle " << r["opening_angles"].dump() << ")";
  }
  std::cout << '\n';
}

void PrintEvents(const json& view, const dpgame::Catalog& catalog) {
  for (const auto& e : view["events"]) {
    const std::string kind = e["kind"];
    const json& p = e["payload"];
    if (kind == "MovePlaced") {
      const auto id = dpgame::TokenId::Parse(p["action"]["token"].get<std::string>());
      std::cout << p["player"].get<std::string>() << " placed " << id.ToString() << " ("
                << catalog.token(id).label << ") at " << p["position"] << '\n';
    } else if (kind == "VerdictIssued") {
      std::cout << "Judge: " << p["verdict"]["winner"].get<std::string>() << " +1, \""
                << p["verdict"]["comment"].get<std::string>() << "\"\n";
    }
  }
}

// Interactive terminal game against a policy.
int RunPlay(const std::string& human_side, const std::string& opponent, std::uint64_t seed,
            const std::string& catalog_path, const std::string& data_dir) {
  const dpgame::Player human = dpgame::ParsePlayer(human_side);
  dpgame::Catalog storage = dpgame::Catalog::Default();
  const dpgame::Catalog& catalog = CatalogFor(catalog_path, storage);
  std::optional<std::filesystem::path> dir;
  if (!data_dir.empty()) dir = data_dir;
  dpgame::SessionStore store(dir);

  json config{{"seed", seed}, {"catalog", catalog_path.empty() ? "default" : catalog_path}};
  config[human == dpgame::Player::kAttacker ? "attacker" : "defender"] = "human";
  config[human == dpgame::Player::kAttacker ? "defender" : "attacker"] = opponent;
  json view = store.Create(config);
  const std::string id = view["session_id"];
  std::cout << "session " << id << ": you play the " << dpgame::PlayerName(human) << "\n"
            << "enter: <token id or name> <Center|Inner|Middle|Outer> [opening angle], "
               "'hint', or 'resign'\n";

  while (view["status"] == "Open") {
    const dpgame::Player mover = dpgame::ParsePlayer(view["state"]["to_move"].get<std::string>());
    if (mover != human) {
      view = store.Command(id, json{{"type", "RequestAiMove"}});
      PrintEvents(view, catalog);
      continue;
    }
    std::cout << '\n' << view["state"]["ply"] << " plies played; score A "
              << view["score"]["attacker"] << " / D " << view["score"]["defender"] << '\n';
    PrintLegal(view);
    std::cout << "> " << std::flush;
    std::string line;
    if (!std::getline(std::cin, line)) {
      std::cerr << "input closed; game abandoned\n";
      return 1;
    }
    auto words = Words(line);
    if (words.empty()) continue;
    try {
      if (words[0] == "hint") {
        json h = store.Hint(id);
        std::cout << "hint: " << h["action"].dump() << " -> position " << h["position"] << '\n';
        continue;
      }
      if (words[0] == "resign") {
        view = store.Command(id, json{{"type", "Resign"}});
        break;
      }
      // Token names may contain spaces: the region is the first word that
      // parses as one.
      std::size_t r = 1;
      while (r < words.size()) {
        try {
          dpgame::ParseRegion(words[r]);
          break;
        } catch (const dpgame::Error&) {
          ++r;
        }
      }
      if (r >= words.size()) {
        std::cout << "expected a region\n";
        continue;
      }
      std::string token = words[0];
      for (std::size_t k = 1; k < r; ++k) token += " " + words[k];
      json cmd{{"type", "PlaceToken"}, {"token", token}, {"region", words[r]}};
      if (r + 1 < words.size()) cmd["opening_angle"] = std::stoi(words[r + 1]);
      view = store.Command(id, cmd);
      PrintEvents(view, catalog);
    } catch (const std::exception& e) {
      std::cout << "rejected: " << e.what() << '\n';
    }
  }

  const auto events = store.Events(id);
  const auto replay = dpgame::SessionReplay(events);
  std::cout << '\n' << dpgame::RenderBoard(replay.state) << '\n'
            << dpgame::RenderIterationTable(replay.report->iterations, catalog) << '\n'
            << "final: attacker " << replay.report->final.attacker_total << ", defender "
            << replay.report->final.defender_total << " ("
            << dpgame::OutcomeName(replay.report->final.outcome) << ")\n"
            << "awareness " << replay.report->awareness_score << "%, intrusion "
            << replay.report->intrusion_score << "%\n";
  if (auto path = store.LogPath(id)) std::cout << "log: " << path->string() << '\n';
  return 0;
}

int RunReport(const std::string& log_path, const std::string& format) {
  const auto events = dpgame::ReadEventLog(log_path);
  const auto replay = dpgame::SessionReplay(events);
  dpgame::Catalog storage = dpgame::Catalog::Default();
  const dpgame::Catalog& catalog = CatalogFor(replay.config.catalog, storage);
  const dpgame::MatchupMatrix matrix = dpgame::SeededMatchupMatrix(catalog);
  const dpgame::GameReport report =
      replay.report ? *replay.report
                    : dpgame::MakeGameReportUnchecked(replay.state, matrix, catalog);

  if (format == "json") {
    json j = dpgame::ToJson(report);
    j["session_id"] = replay.session_id;
    j["status"] = replay.status == dpgame::SessionStatus::kOpen ? "Open" : "Finished";
    j["trick_breakdown"] = dpgame::ToJson(dpgame::TrickBreakdown(std::span(&report, 1)));
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  if (format == "csv") {
    std::cout << dpgame::ReportCsv(report, catalog);
    return 0;
  }
  std::cout << "session " << replay.session_id << " ("
            << (replay.status == dpgame::SessionStatus::kOpen ? "open" : "finished") << ")\n\n"
            << dpgame::RenderBoard(replay.state) << '\n'
            << dpgame::RenderIterationTable(report.iterations, catalog) << '\n'
            << "Evaluation pairs: attacker " << report.final.attacker_total << ", defender "
            << report.final.defender_total << " (" << dpgame::OutcomeName(report.final.outcome)
            << ")\n"
            << "Awareness score " << report.awareness_score << "%, intrusion score "
            << report.intrusion_score << "%, unjudged matchups " << report.unjudged_count
            << "\n\n"
            << dpgame::RenderTrickTable(dpgame::TrickBreakdown(std::span(&report, 1)));
  return 0;
}

dpgame::PayoffMatrix ViewMatrix(const std::string& view, const dpgame::PayoffMatrix& truth) {
  if (view == "true") return truth;
  if (view == "ignorant") {
    return dpgame::PayoffMatrix(truth.rows(), truth.cols(), dpgame::kUnjudgedPayoff);
  }
  throw dpgame::ValidationError("view must be 'true' or 'ignorant'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Data protection awareness game: play, simulate, analyse"};
  app.require_subcommand(1);

  std::string catalog_path;
  app.add_option("--catalog", catalog_path, "Catalog JSON file (default: built-in)");

  auto* play = app.add_subcommand("play", "Interactive terminal game against an AI");
  std::string human = "defender";
  std::string opponent = "greedy";
  std::uint64_t play_seed = 0;
  std::string play_data;
  play->add_option("--human", human, "Seat you play: attacker or defender");
  play->add_option("--opponent", opponent, "random, greedy, minimax or minimax:N");
  play->add_option("--seed", play_seed, "Seed for a random opponent");
  play->add_option("--data", play_data, "Directory for the session log");

  auto* simulate = app.add_subcommand("simulate", "Run a seeded tournament between two policies");
  int games = 100;
  std::string attacker = "random";
  std::string defender = "random";
  std::uint64_t seed = 0;
  std::string sim_format = "json";
  std::string sim_out;
  int threads = 0;
  simulate->add_option("--games", games, "Number of games")->check(CLI::PositiveNumber);
  simulate->add_option("--attacker", attacker, "Attacker policy");
  simulate->add_option("--defender", defender, "Defender policy");
  simulate->add_option("--seed", seed, "Base seed; game g uses seed + g");
  simulate->add_option("--format", sim_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  simulate->add_option("--out", sim_out, "Write to a file instead of stdout");
  simulate->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* solve = app.add_subcommand("solve", "Equilibrium of the token matchup game");
  int iterations = 100000;
  double tolerance = 0.0;
  std::string solve_format = "json";
  solve->add_option("--iterations", iterations, "Fictitious-play iterations")
      ->check(CLI::PositiveNumber);
  solve->add_option("--tolerance", tolerance, "Stop once exploitability <= tolerance");
  solve->add_option("--format", solve_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* hyper = app.add_subcommand("hypergame", "Misperception analysis of the matchup game");
  std::string attacker_view = "true";
  std::string defender_view = "true";
  int hyper_iterations = 100000;
  hyper->add_option("--attacker-view", attacker_view, "true or ignorant");
  hyper->add_option("--defender-view", defender_view, "true or ignorant");
  hyper->add_option("--iterations", hyper_iterations, "Fictitious-play iterations")
      ->check(CLI::PositiveNumber);

  auto* report = app.add_subcommand("report", "Re-render a session log");
  std::string log_path;
  std::string report_format = "text";
  report->add_option("--log", log_path, "Session JSONL file")->required();
  report->add_option("--format", report_format, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));

  auto* serve = app.add_subcommand("serve", "Run the HTTP session service");
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string data_dir;
  serve->add_option("--port", port, "Port")->check(CLI::Range(0, 65535));
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--data", data_dir, std::string("Session directory (env ") +
                                            dpgame::kDataDirEnv + ", default ./sessions)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsageExit;
  }

  try {
    if (*play) return RunPlay(human, opponent, play_seed, catalog_path, play_data);

    dpgame::Catalog storage = dpgame::Catalog::Default();
    const dpgame::Catalog& catalog = CatalogFor(catalog_path, storage);
    const dpgame::MatchupMatrix matrix = dpgame::SeededMatchupMatrix(catalog);

    if (*simulate) {
      dpgame::TournamentConfig config;
      config.games = games;
      config.attacker = dpgame::Policy::Parse(attacker);
      config.defender = dpgame::Policy::Parse(defender);
      config.seed = seed;
      config.threads = threads;
      const auto summary = dpgame::RunTournament(config, matrix, catalog);
      Emit(sim_format == "csv" ? dpgame::TournamentCsv(summary)
                               : dpgame::ToJson(summary).dump(2) + "\n",
           sim_out);
      return 0;
    }
    if (*solve) {
      const auto result =
          dpgame::SolveMatrixGame(dpgame::MakePayoffMatrix(matrix), iterations, tolerance);
      std::cout << (solve_format == "csv" ? dpgame::EquilibriumCsv(result)
                                          : dpgame::ToJson(result).dump(2) + "\n");
      return 0;
    }
    if (*hyper) {
      const auto truth = dpgame::MakePayoffMatrix(matrix);
      const auto result = dpgame::HypergameEval(truth, ViewMatrix(attacker_view, truth),
                                                ViewMatrix(defender_view, truth),
                                                hyper_iterations);
      std::cout << dpgame::ToJson(result).dump(2) << '\n';
      return 0;
    }
    if (*report) return RunReport(log_path, report_format);
    if (*serve) {
      if (data_dir.empty()) {
        const char* env = std::getenv(dpgame::kDataDirEnv);
        data_dir = env != nullptr && *env != '\0' ? env : "sessions";
      }
      return dpgame::Serve(host, port, data_dir);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
