#include <doctest.h>

#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "dpgame/catalog.h"
#include "oracle/published_table.h"

using namespace dpgame;
using nlohmann::json;

namespace {

json DefaultJson() { return Catalog::Default().ToJson(); }

std::string ErrorOf(const json& j) {
  try {
    Catalog::FromJson(j);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("default catalog has 13 tokens per side") {
  const Catalog& c = Catalog::Default();
  CHECK(c.tokens(Player::kAttacker).size() == 13);
  CHECK(c.tokens(Player::kDefender).size() == 13);
  for (Player p : {Player::kAttacker, Player::kDefender}) {
    int expected = 1;
    for (const auto& t : c.tokens(p)) {
      CHECK(t.id == TokenId{p, expected++});
      CHECK(TrickTagSide(t.trick) == p);
      CHECK_FALSE(t.label.empty());
    }
  }
  CHECK(c.token(TokenId::Parse("A1")).label == "Email");
  CHECK(c.token(TokenId::Parse("A5")).definition == "Malicious directory");
  CHECK(c.token(TokenId::Parse("A6")).definition == "Malicious directory");
}

TEST_CASE("trick spellings are normalised on load") {
  const Catalog& c = Catalog::Default();
  CHECK(c.token(TokenId::Parse("D10")).trick == TrickTag::kThreatsLandscape);
  CHECK(c.token(TokenId::Parse("A13")).trick == TrickTag::kThreats);
  CHECK(ParseTrickTag("Treats landscape") == TrickTag::kThreatsLandscape);
  CHECK(ParseTrickTag("threat") == TrickTag::kThreats);
  CHECK(ParseTrickTag("Risk Management") == TrickTag::kRiskManagement);
  CHECK_FALSE(ParseTrickTag("Sorcery").has_value());
}

TEST_CASE("trick tags and psychological factors") {
  int attacker = 0;
  for (TrickTag t : AllTrickTags()) attacker += TrickTagSide(t) == Player::kAttacker;
  CHECK(AllTrickTags().size() == kNumTrickTags);
  CHECK(attacker == 7);

  int vulnerable = 0, protective = 0, stimuli = 0;
  for (PsychFactor f : AllPsychFactors()) {
    switch (PsychFactorPole(f)) {
      case FactorPole::kVulnerability: ++vulnerable; break;
      case FactorPole::kProtection: ++protective; break;
      case FactorPole::kStimulus: ++stimuli; break;
    }
  }
  CHECK(vulnerable == 7);
  CHECK(protective == 1);
  CHECK(stimuli == 2);
}

TEST_CASE("token ids") {
  for (Player p : {Player::kAttacker, Player::kDefender}) {
    for (int i = 1; i <= 13; ++i) {
      const TokenId id{p, i};
      CHECK(TokenId::Parse(id.ToString()) == id);
    }
  }
  CHECK(TokenId::Parse("d7") == TokenId{Player::kDefender, 7});
  for (const char* bad : {"A0", "A14", "B1", "A", "", "A1x", "A01"}) {
    CAPTURE(bad);
    CHECK_FALSE(TokenId::TryParse(bad).has_value());
  }
  CHECK_THROWS_AS(TokenId::Parse("Z9"), ValidationError);
}

TEST_CASE("a catalog short of a defender is rejected") {
  json j = DefaultJson();
  j["defender_tokens"].erase(j["defender_tokens"].end() - 1);
  CHECK(ErrorOf(j) == "defender count 12 ≠ 13");
}

TEST_CASE("an alias claimed by two tokens is rejected") {
  json j = DefaultJson();
  j["defender_tokens"][6]["aliases"].push_back("Zero trust");
  const std::string err = ErrorOf(j);
  CHECK(err.find("Zero trust") != std::string::npos);
  CHECK(err.find("D5") != std::string::npos);
  CHECK(err.find("D7") != std::string::npos);
}

TEST_CASE("malformed records name the offender") {
  SUBCASE("duplicate id") {
    json j = DefaultJson();
    j["attacker_tokens"][1]["id"] = "A1";
    CHECK(ErrorOf(j).find("duplicate token id A1") != std::string::npos);
  }
  SUBCASE("unknown trick") {
    json j = DefaultJson();
    j["attacker_tokens"][2]["trick"] = "Sorcery";
    const std::string err = ErrorOf(j);
    CHECK(err.find("Sorcery") != std::string::npos);
    CHECK(err.find("A3") != std::string::npos);
  }
  SUBCASE("trick from the other side") {
    json j = DefaultJson();
    j["attacker_tokens"][0]["trick"] = "Audit";
    CHECK(ErrorOf(j).find("other side") != std::string::npos);
  }
  SUBCASE("missing field") {
    json j = DefaultJson();
    j["defender_tokens"][3].erase("label");
    CHECK(ErrorOf(j).find("'label'") != std::string::npos);
  }
  SUBCASE("missing token list") {
    json j = DefaultJson();
    j.erase("attacker_tokens");
    CHECK(ErrorOf(j).find("attacker_tokens") != std::string::npos);
  }
  SUBCASE("matchup naming an unknown token") {
    json j = DefaultJson();
    j["matchups"][0]["defender"] = "Firewall";
    CHECK(ErrorOf(j).find("Firewall") != std::string::npos);
  }
  SUBCASE("conflicting verdicts") {
    json j = DefaultJson();
    json dup = j["matchups"][0];
    dup["winner"] = "Attacker";
    j["matchups"].push_back(dup);
    CHECK(ErrorOf(j).find("A1 vs D5 has conflicting verdicts") != std::string::npos);
  }
  CHECK_THROWS_AS(Catalog::Parse("{not json"), ValidationError);
  CHECK_THROWS_WITH_AS(Catalog::LoadFile("/nonexistent/catalog.json"),
                       doctest::Contains("file not found"), NotFoundError);
}

TEST_CASE("name resolution") {
  const Catalog& c = Catalog::Default();
  CHECK(c.Resolve(Player::kDefender, "Zero trust") == TokenId::Parse("D5"));
  CHECK(c.Resolve(Player::kDefender, "No trust") == TokenId::Parse("D5"));
  CHECK(c.Resolve(Player::kDefender, "Avoid") == TokenId::Parse("D3"));
  CHECK(c.Resolve(Player::kAttacker, "email") == TokenId::Parse("A1"));
  CHECK(c.Resolve(Player::kAttacker, "  EMAIL ") == TokenId::Parse("A1"));
  CHECK(c.Resolve(Player::kDefender, "Backups") == TokenId::Parse("D13"));
  CHECK(c.Resolve(Player::kDefender, "Connect") == TokenId::Parse("D12"));
  CHECK(c.Resolve(Player::kAttacker, "A9") == TokenId::Parse("A9"));
  // The same label on both sides resolves per role.
  CHECK(c.Resolve(Player::kAttacker, "Connection") == TokenId::Parse("A7"));
  CHECK(c.Resolve(Player::kDefender, "Connection") == TokenId::Parse("D12"));
  CHECK_THROWS_AS(c.Resolve(Player::kDefender, "Firewall"), NotFoundError);
  CHECK_FALSE(c.TryResolve(Player::kAttacker, "Zero trust").has_value());
  CHECK(ResolveTokenName(c, Player::kDefender, "Zero trust") == TokenId::Parse("D5"));
}

TEST_CASE("every published label resolves to the hand-read token") {
  const Catalog& c = Catalog::Default();
  for (std::size_t i = 0; i < oracle::kPublishedTable.size(); ++i) {
    const auto& row = oracle::kPublishedTable[i];
    CAPTURE(row.iteration);
    CHECK(c.Resolve(Player::kAttacker, row.attacker).index == oracle::kPublishedIds[i][0]);
    CHECK(c.Resolve(Player::kDefender, row.defender).index == oracle::kPublishedIds[i][1]);
  }
}

TEST_CASE("seeded matchup matrix") {
  const Catalog& c = Catalog::Default();
  const MatchupMatrix m = SeededMatchupMatrix(c);

  // Distinct pairs in the transcription, counted before consulting the matrix.
  std::set<std::pair<int, int>> distinct;
  for (const auto& ids : oracle::kPublishedIds) distinct.insert({ids[0], ids[1]});
  CHECK(distinct.size() == 26);
  CHECK(m.size() == distinct.size());

  const auto* e1 = m.Find(TokenId::Parse("A1"), TokenId::Parse("D5"));
  REQUIRE(e1 != nullptr);
  CHECK(e1->winner == Player::kDefender);
  const auto* e4 = m.Find(TokenId::Parse("A2"), TokenId::Parse("D7"));
  REQUIRE(e4 != nullptr);
  CHECK(e4->winner == Player::kAttacker);
  CHECK(m.Find(TokenId::Parse("A1"), TokenId::Parse("D13")) == nullptr);

  for (const auto& e : m.entries()) {
    CHECK(e.attacker.role == Player::kAttacker);
    CHECK(e.defender.role == Player::kDefender);
  }
  // Exhaustive scan for a conflicting duplicate.
  const auto entries = m.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      CHECK_FALSE((entries[i].attacker == entries[j].attacker &&
                   entries[i].defender == entries[j].defender));
    }
  }
}

TEST_CASE("matchup matrix construction rules") {
  const TokenId a1 = TokenId::Parse("A1"), d1 = TokenId::Parse("D1");
  std::vector<MatchupEntry> same = {{a1, d1, Player::kDefender, "x"},
                                    {a1, d1, Player::kDefender, "x"}};
  CHECK(MatchupMatrix(same).size() == 1);
  std::vector<MatchupEntry> swapped = {{d1, a1, Player::kDefender, ""}};
  CHECK_THROWS_WITH_AS(MatchupMatrix{swapped}, doctest::Contains("role mismatch"),
                       ValidationError);
}

TEST_CASE("catalog round-trips through JSON") {
  const Catalog& c = Catalog::Default();
  const Catalog back = Catalog::Parse(c.ToJson().dump());
  CHECK(back == c);
  CHECK(back.ToJson() == c.ToJson());
  CHECK(LoadCatalog(c.ToJson().dump(2)) == c);
}
