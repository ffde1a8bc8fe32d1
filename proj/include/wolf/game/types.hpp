#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wolf::game {

inline constexpr int kPlayerCount = 5;

enum class Role { Villager, Seer, Werewolf, Possessed };
enum class Team { Human, Werewolf };
enum class Species { Human, Wolf };
enum class Phase { Talk, Vote, Night };
enum class Status { Ongoing, HumanWin, WerewolfWin };

constexpr Team team_of(Role r) {
  return (r == Role::Werewolf || r == Role::Possessed) ? Team::Werewolf : Team::Human;
}

// The possessed is a human that plays for the wolves.
constexpr Species species_of(Role r) {
  return r == Role::Werewolf ? Species::Wolf : Species::Human;
}

// Wire names: "VILLAGER", "SEER", "WEREWOLF", "POSSESSED".
std::string_view to_string(Role r);
std::string_view to_string(Species s);  // "HUMAN" / "WEREWOLF"
std::string_view to_string(Phase p);    // "TALK" / "VOTE" / "NIGHT"
std::string_view to_string(Status s);   // "ONGOING" / "HUMAN" / "WEREWOLF"
std::string_view to_string(Team t);     // "HUMAN" / "WEREWOLF"

std::optional<Role> role_from_string(std::string_view s);
std::optional<Species> species_from_string(std::string_view s);
std::optional<Phase> phase_from_string(std::string_view s);
std::optional<Status> status_from_string(std::string_view s);

/// Player seat, 1..5.
class AgentId {
 public:
  constexpr AgentId() = default;
  constexpr explicit AgentId(int index) : index_(index) {}

  constexpr int value() const { return index_; }
  constexpr bool valid() const { return index_ >= 1 && index_ <= kPlayerCount; }
  // Zero-based slot for array indexing.
  constexpr std::size_t slot() const { return static_cast<std::size_t>(index_ - 1); }

  constexpr auto operator<=>(const AgentId&) const = default;

 private:
  int index_ = 0;
};

/// "Agent[03]"
std::string agent_name(AgentId id);

inline std::array<AgentId, kPlayerCount> all_agents() {
  return {AgentId{1}, AgentId{2}, AgentId{3}, AgentId{4}, AgentId{5}};
}

using RoleAssignment = std::array<Role, kPlayerCount>;

inline Role role_of(const RoleAssignment& roles, AgentId id) { return roles.at(id.slot()); }
bool valid_role_multiset(const RoleAssignment& roles);
AgentId werewolf_of(const RoleAssignment& roles);

inline constexpr std::string_view kOver = "Over";
inline constexpr std::string_view kSkip = "Skip";

struct TalkEntry {
  int day = 0;
  int turn = 0;
  int order_in_turn = 0;
  AgentId speaker;
  std::string content;

  bool is_over() const { return content == kOver; }
  bool is_skip() const { return content == kSkip; }
  bool is_control() const { return is_over() || is_skip(); }

  bool operator==(const TalkEntry&) const = default;
};

struct VoteRecord {
  int day = 0;
  AgentId voter;
  AgentId target;
  bool operator==(const VoteRecord&) const = default;
};

struct DivineRecord {
  int day = 0;
  AgentId seer;
  AgentId target;
  Species result = Species::Human;
  bool operator==(const DivineRecord&) const = default;
};

struct AttackRecord {
  int day = 0;
  AgentId attacker;
  AgentId target;
  bool operator==(const AttackRecord&) const = default;
};

struct ExecutionRecord {
  int day = 0;
  AgentId target;
  bool operator==(const ExecutionRecord&) const = default;
};

/// Alive set as a 5-bit mask; bit (id-1) set means alive.
class AliveSet {
 public:
  constexpr AliveSet() = default;
  constexpr explicit AliveSet(unsigned mask) : mask_(mask & 0x1Fu) {}
  static constexpr AliveSet everyone() { return AliveSet{0x1Fu}; }

  constexpr bool contains(AgentId id) const { return id.valid() && (mask_ >> id.slot()) & 1u; }
  constexpr void erase(AgentId id) { mask_ &= ~(1u << id.slot()); }
  constexpr void insert(AgentId id) { mask_ |= (1u << id.slot()); }
  constexpr unsigned mask() const { return mask_; }
  int size() const;
  std::vector<AgentId> members() const;

  constexpr bool operator==(const AliveSet&) const = default;

 private:
  unsigned mask_ = 0;
};

struct GameState {
  int day = 0;
  Phase phase = Phase::Talk;
  AliveSet alive = AliveSet::everyone();
  RoleAssignment roles{};
  std::vector<TalkEntry> talks;
  std::vector<VoteRecord> votes;
  std::vector<ExecutionRecord> executions;
  std::vector<DivineRecord> divinations;
  std::vector<AttackRecord> attacks;
  Status status = Status::Ongoing;
  std::uint64_t rng_seed = 0;

  Role role(AgentId id) const { return role_of(roles, id); }
  bool finished() const { return status != Status::Ongoing; }

  bool operator==(const GameState&) const = default;
};

enum class GameErrc {
  MissingVote,
  InvalidVote,
  NotAlive,
  GameFinished,
  InvalidTarget,
  SeerDead,
  WrongPhase,
  InvalidRoles,
};

std::string_view to_string(GameErrc code);

class GameError : public std::runtime_error {
 public:
  GameError(GameErrc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  GameErrc code() const { return code_; }

 private:
  GameErrc code_;
};

}  // namespace wolf::game
