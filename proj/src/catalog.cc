#include "dpgame/catalog.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "default_catalog_data.h"

namespace dpgame {
namespace {

using nlohmann::json;

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string Trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

constexpr std::array<std::string_view, kNumTrickTags> kTrickNames = {
    "Deceptive",          "False information",   "Threats",
    "Lack of training",   "Distraction",         "Lack of accountability",
    "Lack of technology", "Risk management",     "Audit",
    "Security policy",    "Strategic thinking",  "Intrusion prevention",
    "Training",           "Autonomy",            "Data classification",
    "Threats landscape",  "Collaboration",       "Security tool",
    "Incident response",
};

constexpr std::array<TrickTag, kNumTrickTags> kAllTricks = [] {
  std::array<TrickTag, kNumTrickTags> out{};
  for (int i = 0; i < kNumTrickTags; ++i) out[i] = static_cast<TrickTag>(i);
  return out;
}();

constexpr std::array<std::string_view, 10> kFactorNames = {
    "lack of control", "distrust",  "apathy", "exposure",       "misconception",
    "ignorance",       "powerlessness", "safety", "data diligence", "data negligence",
};

constexpr std::array<PsychFactor, 10> kAllFactors = {
    PsychFactor::kLackOfControl, PsychFactor::kDistrust,
    PsychFactor::kApathy,        PsychFactor::kExposure,
    PsychFactor::kMisconception, PsychFactor::kIgnorance,
    PsychFactor::kPowerlessness, PsychFactor::kSafety,
    PsychFactor::kDataDiligence, PsychFactor::kDataNegligence,
};

TokenDef TokenFromJson(const json& j, Player role) {
  const std::string where = "token record " + j.dump();
  if (!j.is_object()) throw ValidationError(where + ": not an object");
  for (const char* key : {"id", "label", "definition", "trick"}) {
    if (!j.contains(key) || !j[key].is_string()) {
      throw ValidationError(where + ": missing string field '" + key + "'");
    }
  }
  TokenDef def;
  auto id = TokenId::TryParse(j["id"].get<std::string>());
  if (!id) throw ValidationError(where + ": malformed id");
  if (id->role != role) {
    throw ValidationError(where + ": id " + id->ToString() + " listed under the " +
                          Lower(PlayerName(role)) + " tokens");
  }
  def.id = *id;
  def.label = Trim(j["label"].get<std::string>());
  def.definition = j["definition"].get<std::string>();
  auto trick = ParseTrickTag(j["trick"].get<std::string>());
  if (!trick) {
    throw ValidationError(where + ": unknown trick tag '" +
                          j["trick"].get<std::string>() + "'");
  }
  if (TrickTagSide(*trick) != role) {
    throw ValidationError(where + ": trick tag '" + std::string(TrickTagName(*trick)) +
                          "' belongs to the other side");
  }
  def.trick = *trick;
  if (j.contains("aliases")) {
    if (!j["aliases"].is_array()) throw ValidationError(where + ": aliases must be a list");
    for (const auto& a : j["aliases"]) {
      if (!a.is_string()) throw ValidationError(where + ": alias must be a string");
      def.aliases.push_back(Trim(a.get<std::string>()));
    }
  }
  return def;
}

json TokenToJson(const TokenDef& t) {
  return json{{"id", t.id.ToString()},
              {"label", t.label},
              {"definition", t.definition},
              {"trick", TrickTagName(t.trick)},
              {"aliases", t.aliases}};
}

}  // namespace

std::string_view PlayerName(Player p) {
  return p == Player::kAttacker ? "Attacker" : "Defender";
}

Player ParsePlayer(std::string_view s) {
  const std::string l = Lower(s);
  if (l == "attacker") return Player::kAttacker;
  if (l == "defender") return Player::kDefender;
  throw ValidationError("unknown player '" + std::string(s) + "'");
}

std::string TokenId::ToString() const {
  return (role == Player::kAttacker ? "A" : "D") + std::to_string(index);
}

std::optional<TokenId> TokenId::TryParse(std::string_view s) {
  if (s.size() < 2 || s.size() > 3) return std::nullopt;
  TokenId id;
  if (s[0] == 'A' || s[0] == 'a') {
    id.role = Player::kAttacker;
  } else if (s[0] == 'D' || s[0] == 'd') {
    id.role = Player::kDefender;
  } else {
    return std::nullopt;
  }
  if (s[1] == '0') return std::nullopt;
  auto [ptr, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), id.index);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  if (id.index < 1 || id.index > kTokensPerRole) return std::nullopt;
  return id;
}

TokenId TokenId::Parse(std::string_view s) {
  auto id = TryParse(s);
  if (!id) throw ValidationError("malformed token id '" + std::string(s) + "'");
  return *id;
}

std::string_view TrickTagName(TrickTag t) { return kTrickNames[static_cast<int>(t)]; }

Player TrickTagSide(TrickTag t) {
  return static_cast<int>(t) < static_cast<int>(TrickTag::kRiskManagement)
             ? Player::kAttacker
             : Player::kDefender;
}

std::optional<TrickTag> ParseTrickTag(std::string_view s) {
  const std::string l = Lower(Trim(s));
  for (int i = 0; i < kNumTrickTags; ++i) {
    if (Lower(kTrickNames[i]) == l) return static_cast<TrickTag>(i);
  }
  if (l == "treats landscape") return TrickTag::kThreatsLandscape;
  if (l == "threat") return TrickTag::kThreats;
  return std::nullopt;
}

std::span<const TrickTag> AllTrickTags() { return kAllTricks; }

std::string_view PsychFactorName(PsychFactor f) { return kFactorNames[static_cast<int>(f)]; }

FactorPole PsychFactorPole(PsychFactor f) {
  switch (f) {
    case PsychFactor::kSafety:
      return FactorPole::kProtection;
    case PsychFactor::kDataDiligence:
    case PsychFactor::kDataNegligence:
      return FactorPole::kStimulus;
    default:
      return FactorPole::kVulnerability;
  }
}

std::string_view FactorPoleName(FactorPole p) {
  switch (p) {
    case FactorPole::kVulnerability:
      return "vulnerability";
    case FactorPole::kProtection:
      return "protection";
    case FactorPole::kStimulus:
      return "stimulus";
  }
  return "";
}

std::span<const PsychFactor> AllPsychFactors() { return kAllFactors; }

Catalog::Catalog(std::vector<TokenDef> attacker_tokens,
                 std::vector<TokenDef> defender_tokens,
                 std::vector<MatchupRecord> matchups)
    : matchups_(std::move(matchups)) {
  tokens_[ToInt(Player::kAttacker)] = std::move(attacker_tokens);
  tokens_[ToInt(Player::kDefender)] = std::move(defender_tokens);

  for (Player role : {Player::kAttacker, Player::kDefender}) {
    auto& list = tokens_[ToInt(role)];
    const std::string side = Lower(PlayerName(role));
    std::set<int> seen;
    for (const auto& t : list) {
      if (t.id.role != role) {
        throw ValidationError("token " + t.id.ToString() + " listed under the " + side +
                              " tokens");
      }
      if (!seen.insert(t.id.index).second) {
        throw ValidationError("duplicate token id " + t.id.ToString());
      }
      if (TrickTagSide(t.trick) != role) {
        throw ValidationError("token " + t.id.ToString() + ": trick tag '" +
                              std::string(TrickTagName(t.trick)) +
                              "' belongs to the other side");
      }
      if (t.label.empty()) {
        throw ValidationError("token " + t.id.ToString() + ": empty label");
      }
    }
    if (list.size() != kTokensPerRole) {
      throw ValidationError(side + " count " + std::to_string(list.size()) + " ≠ " +
                            std::to_string(kTokensPerRole));
    }
    std::sort(list.begin(), list.end(),
              [](const TokenDef& a, const TokenDef& b) { return a.id < b.id; });

    auto& names = names_[ToInt(role)];
    auto add = [&](const std::string& name, const TokenDef& t) {
      auto key = Lower(name);
      auto [it, inserted] = names.emplace(key, t.id.index);
      if (!inserted && it->second != t.id.index) {
        throw ValidationError("name '" + name + "' maps to both " +
                              TokenId{role, it->second}.ToString() + " and " +
                              t.id.ToString());
      }
    };
    // Labels first so that an alias colliding with another token's label is
    // reported against the alias owner.
    for (const auto& t : list) add(t.label, t);
    for (const auto& t : list) {
      for (const auto& a : t.aliases) {
        if (a.empty()) throw ValidationError("token " + t.id.ToString() + ": empty alias");
        add(a, t);
      }
    }
  }

  // Every matchup must resolve; conflicts are caught by the matrix.
  for (std::size_t i = 0; i < matchups_.size(); ++i) {
    const auto& m = matchups_[i];
    const std::string where = "matchup #" + std::to_string(i + 1) + " (" + m.attacker +
                              " vs " + m.defender + ")";
    if (!TryResolve(Player::kAttacker, m.attacker)) {
      throw ValidationError(where + ": unknown attacker token '" + m.attacker + "'");
    }
    if (!TryResolve(Player::kDefender, m.defender)) {
      throw ValidationError(where + ": unknown defender token '" + m.defender + "'");
    }
  }
  SeededMatchupMatrix(*this);
}

Catalog Catalog::FromJson(const json& j) {
  if (!j.is_object()) throw ValidationError("catalog: top level must be an object");
  auto tokens = [&](const char* key, Player role) {
    if (!j.contains(key) || !j[key].is_array()) {
      throw ValidationError(std::string("catalog: missing list '") + key + "'");
    }
    std::vector<TokenDef> out;
    for (const auto& rec : j[key]) out.push_back(TokenFromJson(rec, role));
    return out;
  };
  auto attackers = tokens("attacker_tokens", Player::kAttacker);
  auto defenders = tokens("defender_tokens", Player::kDefender);

  std::vector<MatchupRecord> matchups;
  if (j.contains("matchups")) {
    if (!j["matchups"].is_array()) throw ValidationError("catalog: 'matchups' must be a list");
    for (const auto& m : j["matchups"]) {
      const std::string where = "matchup record " + m.dump();
      if (!m.is_object()) throw ValidationError(where + ": not an object");
      for (const char* key : {"attacker", "defender", "winner"}) {
        if (!m.contains(key) || !m[key].is_string()) {
          throw ValidationError(where + ": missing string field '" + key + "'");
        }
      }
      MatchupRecord r;
      r.attacker = m["attacker"].get<std::string>();
      r.defender = m["defender"].get<std::string>();
      try {
        r.winner = ParsePlayer(m["winner"].get<std::string>());
      } catch (const ValidationError& e) {
        throw ValidationError(where + ": " + e.what());
      }
      r.comment = m.value("comment", std::string());
      matchups.push_back(std::move(r));
    }
  }
  return Catalog(std::move(attackers), std::move(defenders), std::move(matchups));
}

Catalog Catalog::Parse(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("catalog: invalid JSON: ") + e.what());
  }
  return FromJson(j);
}

Catalog Catalog::LoadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("file not found: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return Parse(buf.str());
}

const Catalog& Catalog::Default() {
  static const Catalog catalog = Parse(kDefaultCatalogJson);
  return catalog;
}

json Catalog::ToJson() const {
  json j;
  j["attacker_tokens"] = json::array();
  j["defender_tokens"] = json::array();
  for (const auto& t : tokens(Player::kAttacker)) j["attacker_tokens"].push_back(TokenToJson(t));
  for (const auto& t : tokens(Player::kDefender)) j["defender_tokens"].push_back(TokenToJson(t));
  j["matchups"] = json::array();
  for (const auto& m : matchups_) {
    j["matchups"].push_back(json{{"attacker", m.attacker},
                                 {"defender", m.defender},
                                 {"winner", PlayerName(m.winner)},
                                 {"comment", m.comment}});
  }
  return j;
}

const TokenDef& Catalog::token(TokenId id) const {
  if (id.index < 1 || id.index > kTokensPerRole) {
    throw NotFoundError("no token " + id.ToString());
  }
  return tokens_[ToInt(id.role)][id.index - 1];
}

std::span<const TokenDef> Catalog::tokens(Player role) const { return tokens_[ToInt(role)]; }

std::optional<TokenId> Catalog::TryResolve(Player role, std::string_view name) const {
  // Canonical ids are accepted as names too.
  if (auto id = TokenId::TryParse(Trim(name)); id && id->role == role) return id;
  const auto& names = names_[ToInt(role)];
  auto it = names.find(Lower(Trim(name)));
  if (it == names.end()) return std::nullopt;
  return TokenId{role, it->second};
}

TokenId Catalog::Resolve(Player role, std::string_view name) const {
  auto id = TryResolve(role, name);
  if (!id) {
    throw NotFoundError("unknown " + Lower(PlayerName(role)) + " token '" +
                        std::string(name) + "'");
  }
  return *id;
}

Catalog LoadCatalog(std::string_view json_text) { return Catalog::Parse(json_text); }

TokenId ResolveTokenName(const Catalog& catalog, Player role, std::string_view name) {
  return catalog.Resolve(role, name);
}

MatchupMatrix::MatchupMatrix(std::span<const MatchupEntry> entries) {
  for (const auto& e : entries) {
    if (e.attacker.role != Player::kAttacker || e.defender.role != Player::kDefender) {
      throw ValidationError("matchup " + e.attacker.ToString() + " vs " +
                            e.defender.ToString() + ": role mismatch");
    }
    auto key = std::make_pair(e.attacker.index, e.defender.index);
    auto it = index_.find(key);
    if (it != index_.end()) {
      if (entries_[it->second].winner != e.winner) {
        throw ValidationError("matchup " + e.attacker.ToString() + " vs " +
                              e.defender.ToString() + " has conflicting verdicts");
      }
      continue;
    }
    index_.emplace(key, entries_.size());
    entries_.push_back(e);
  }
}

const MatchupEntry* MatchupMatrix::Find(TokenId attacker, TokenId defender) const {
  auto it = index_.find({attacker.index, defender.index});
  return it == index_.end() ? nullptr : &entries_[it->second];
}

MatchupMatrix SeededMatchupMatrix(const Catalog& catalog) {
  std::vector<MatchupEntry> entries;
  entries.reserve(catalog.matchups().size());
  for (const auto& m : catalog.matchups()) {
    entries.push_back(MatchupEntry{catalog.Resolve(Player::kAttacker, m.attacker),
                                   catalog.Resolve(Player::kDefender, m.defender),
                                   m.winner, m.comment});
  }
  return MatchupMatrix(entries);
}

}  // namespace dpgame
