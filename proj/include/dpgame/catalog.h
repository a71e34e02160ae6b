#ifndef DPGAME_CATALOG_H_
#define DPGAME_CATALOG_H_

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace dpgame {

// Base of every error the engine raises. Messages are meant to be shown to
// players and API clients verbatim.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

enum class Player : std::uint8_t { kAttacker = 0, kDefender = 1 };

inline constexpr int kNumPlayers = 2;
inline constexpr int kTokensPerRole = 13;

constexpr Player Opponent(Player p) {
  return p == Player::kAttacker ? Player::kDefender : Player::kAttacker;
}
constexpr int ToInt(Player p) { return static_cast<int>(p); }

std::string_view PlayerName(Player p);  // "Attacker" / "Defender"
Player ParsePlayer(std::string_view s);  // case-insensitive

// A token is identified by its owner's role and its 1-based index; rendered
// as "A7" or "D13".
struct TokenId {
  Player role = Player::kAttacker;
  int index = 1;

  std::string ToString() const;
  static TokenId Parse(std::string_view s);  // throws ValidationError
  // Strict form check without throwing.
  static std::optional<TokenId> TryParse(std::string_view s);

  friend auto operator<=>(const TokenId&, const TokenId&) = default;
};

// Trick tags. Attacker tags come first; order is the declaration order used
// for reporting.
enum class TrickTag : std::uint8_t {
  kDeceptive,
  kFalseInformation,
  kThreats,
  kLackOfTraining,
  kDistraction,
  kLackOfAccountability,
  kLackOfTechnology,
  kRiskManagement,
  kAudit,
  kSecurityPolicy,
  kStrategicThinking,
  kIntrusionPrevention,
  kTraining,
  kAutonomy,
  kDataClassification,
  kThreatsLandscape,
  kCollaboration,
  kSecurityTool,
  kIncidentResponse,
};
inline constexpr int kNumTrickTags = 19;

std::string_view TrickTagName(TrickTag t);
Player TrickTagSide(TrickTag t);
// Accepts canonical names case-insensitively plus the spellings found in the
// original token table ("Treats landscape", "Threat").
std::optional<TrickTag> ParseTrickTag(std::string_view s);
std::span<const TrickTag> AllTrickTags();

enum class FactorPole : std::uint8_t { kVulnerability, kProtection, kStimulus };

// Psychological factors of data. Descriptive metadata only; no factor is
// linked to a trick tag.
enum class PsychFactor : std::uint8_t {
  kLackOfControl,
  kDistrust,
  kApathy,
  kExposure,
  kMisconception,
  kIgnorance,
  kPowerlessness,
  kSafety,
  kDataDiligence,
  kDataNegligence,
};

std::string_view PsychFactorName(PsychFactor f);
FactorPole PsychFactorPole(PsychFactor f);
std::string_view FactorPoleName(FactorPole p);
std::span<const PsychFactor> AllPsychFactors();

struct TokenDef {
  TokenId id;
  std::string label;
  std::string definition;
  TrickTag trick = TrickTag::kDeceptive;
  std::vector<std::string> aliases;

  friend bool operator==(const TokenDef&, const TokenDef&) = default;
};

// A matchup record as written in a catalog file. Token references are kept
// as written (id or name) and resolved when the matrix is built.
struct MatchupRecord {
  std::string attacker;
  std::string defender;
  Player winner = Player::kDefender;
  std::string comment;

  friend bool operator==(const MatchupRecord&, const MatchupRecord&) = default;
};

class Catalog {
 public:
  // Validates and builds. Throws ValidationError naming the offending record.
  Catalog(std::vector<TokenDef> attacker_tokens,
          std::vector<TokenDef> defender_tokens,
          std::vector<MatchupRecord> matchups);

  static Catalog FromJson(const nlohmann::json& j);
  static Catalog Parse(std::string_view text);
  static Catalog LoadFile(const std::string& path);
  // The shipped catalog (token table plus the 26 judged matchups).
  static const Catalog& Default();

  nlohmann::json ToJson() const;

  const TokenDef& token(TokenId id) const;
  std::span<const TokenDef> tokens(Player role) const;
  std::span<const MatchupRecord> matchups() const { return matchups_; }

  // Case-insensitive match over labels, then aliases. Throws NotFoundError.
  TokenId Resolve(Player role, std::string_view name) const;
  std::optional<TokenId> TryResolve(Player role, std::string_view name) const;

  friend bool operator==(const Catalog& a, const Catalog& b) {
    return a.tokens_ == b.tokens_ && a.matchups_ == b.matchups_;
  }

 private:
  std::array<std::vector<TokenDef>, kNumPlayers> tokens_;
  std::vector<MatchupRecord> matchups_;
  // Lower-cased label/alias -> token index, per role.
  std::array<std::map<std::string, int, std::less<>>, kNumPlayers> names_;
};

// Free-function forms of the catalog operations.
Catalog LoadCatalog(std::string_view json_text);
TokenId ResolveTokenName(const Catalog& catalog, Player role,
                         std::string_view name);

struct MatchupEntry {
  TokenId attacker;
  TokenId defender{Player::kDefender, 1};
  Player winner = Player::kDefender;
  std::string comment;

  friend bool operator==(const MatchupEntry&, const MatchupEntry&) = default;
};

// Partial attacker x defender table of judged verdicts. Pairs absent from the
// table are unjudged and earn no points in play.
class MatchupMatrix {
 public:
  MatchupMatrix() = default;
  // Throws ValidationError on role mismatch or a conflicting duplicate pair.
  // An exact duplicate is collapsed.
  explicit MatchupMatrix(std::span<const MatchupEntry> entries);

  const MatchupEntry* Find(TokenId attacker, TokenId defender) const;
  // Entries in insertion order.
  std::span<const MatchupEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<MatchupEntry> entries_;
  std::map<std::pair<int, int>, std::size_t> index_;
};

// Resolves the catalog's matchup records into a matrix.
MatchupMatrix SeededMatchupMatrix(const Catalog& catalog);

}  // namespace dpgame

#endif  // DPGAME_CATALOG_H_
