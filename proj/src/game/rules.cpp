#include "wolf/game/rules.hpp"

#include <algorithm>
#include <array>

namespace wolf::game {

namespace {

void require_ongoing(const GameState& s) {
  if (s.finished()) throw GameError(GameErrc::GameFinished, "game is over");
}

void require_phase(const GameState& s, Phase p) {
  if (s.phase != p) {
    throw GameError(GameErrc::WrongPhase, "expected phase " + std::string(to_string(p)) +
                                              ", state is in " + std::string(to_string(s.phase)));
  }
}

std::string who(AgentId id) { return id.valid() ? agent_name(id) : "agent " + std::to_string(id.value()); }

}  // namespace

RoleAssignment assign_roles(Rng& rng) {
  RoleAssignment roles{Role::Seer, Role::Werewolf, Role::Possessed, Role::Villager, Role::Villager};
  std::shuffle(roles.begin(), roles.end(), rng);
  return roles;
}

GameState new_game(const RoleAssignment& roles, std::uint64_t seed) {
  if (!valid_role_multiset(roles)) {
    throw GameError(GameErrc::InvalidRoles, "role multiset must be 1 seer, 1 werewolf, 1 possessed, 2 villagers");
  }
  GameState s;
  s.roles = roles;
  s.rng_seed = seed;
  return s;
}

AgentId tally_votes(std::span<const VoteRecord> votes, AliveSet alive, Rng& rng) {
  std::array<int, kPlayerCount> counts{};
  AliveSet voted;
  for (const auto& v : votes) {
    if (!alive.contains(v.voter)) throw GameError(GameErrc::InvalidVote, who(v.voter) + " is not alive");
    if (!alive.contains(v.target)) throw GameError(GameErrc::InvalidVote, who(v.target) + " is not a living target");
    if (v.voter == v.target) throw GameError(GameErrc::InvalidVote, who(v.voter) + " voted for themselves");
    if (voted.contains(v.voter)) throw GameError(GameErrc::InvalidVote, who(v.voter) + " voted twice");
    voted.insert(v.voter);
    ++counts[v.target.slot()];
  }
  for (AgentId id : alive.members()) {
    if (!voted.contains(id)) throw GameError(GameErrc::MissingVote, agent_name(id) + " cast no vote");
  }

  const int best = *std::max_element(counts.begin(), counts.end());
  std::vector<AgentId> tied;
  for (AgentId id : all_agents()) {
    if (counts[id.slot()] == best) tied.push_back(id);
  }
  if (tied.size() == 1) return tied.front();
  std::uniform_int_distribution<std::size_t> pick(0, tied.size() - 1);
  return tied[pick(rng)];
}

Status check_win(const RoleAssignment& roles, AliveSet alive) {
  int wolves = 0;
  int humans = 0;
  for (AgentId id : alive.members()) {
    if (role_of(roles, id) == Role::Werewolf) {
      ++wolves;
    } else {
      ++humans;
    }
  }
  if (wolves == 0) return Status::HumanWin;
  if (humans <= wolves) return Status::WerewolfWin;
  return Status::Ongoing;
}

GameState record_talk(GameState state, TalkEntry entry) {
  require_ongoing(state);
  require_phase(state, Phase::Talk);
  if (!state.alive.contains(entry.speaker)) {
    throw GameError(GameErrc::NotAlive, who(entry.speaker) + " cannot talk");
  }
  if (entry.day != state.day) throw GameError(GameErrc::WrongPhase, "talk entry is for another day");
  state.talks.push_back(std::move(entry));
  return state;
}

GameState close_talk(GameState state) {
  require_ongoing(state);
  require_phase(state, Phase::Talk);
  state.phase = state.day == 0 ? Phase::Night : Phase::Vote;
  return state;
}

GameState record_votes(GameState state, std::span<const VoteRecord> votes) {
  require_ongoing(state);
  require_phase(state, Phase::Vote);
  for (const auto& v : votes) {
    if (v.day != state.day) throw GameError(GameErrc::InvalidVote, "vote is for another day");
    if (!state.alive.contains(v.voter) || !state.alive.contains(v.target) || v.voter == v.target) {
      throw GameError(GameErrc::InvalidVote, who(v.voter) + " -> " + who(v.target));
    }
    state.votes.push_back(v);
  }
  return state;
}

GameState resolve_elimination(GameState state, AgentId target) {
  require_ongoing(state);
  require_phase(state, Phase::Vote);
  if (!state.alive.contains(target)) throw GameError(GameErrc::NotAlive, who(target) + " cannot be executed");
  state.alive.erase(target);
  state.executions.push_back({state.day, target});
  state.status = check_win(state);
  state.phase = Phase::Night;
  return state;
}

GameState resolve_attack(GameState state, AgentId target) {
  require_ongoing(state);
  require_phase(state, Phase::Night);
  const auto wolf = alive_werewolf(state);
  if (!wolf) throw GameError(GameErrc::InvalidTarget, "no living werewolf");
  if (!state.alive.contains(target) || state.role(target) == Role::Werewolf) {
    throw GameError(GameErrc::InvalidTarget, who(target) + " cannot be attacked");
  }
  state.alive.erase(target);
  state.attacks.push_back({state.day, *wolf, target});
  state.status = check_win(state);
  return state;
}

GameState start_day(GameState state) {
  require_ongoing(state);
  require_phase(state, Phase::Night);
  ++state.day;
  state.phase = Phase::Talk;
  return state;
}

DivineRecord divine(const GameState& state, AgentId target) {
  require_ongoing(state);
  const auto seer = alive_seer(state);
  if (!seer) throw GameError(GameErrc::SeerDead, "the seer is dead");
  if (!state.alive.contains(target) || target == *seer) {
    throw GameError(GameErrc::InvalidTarget, who(target) + " cannot be divined");
  }
  return DivineRecord{state.day, *seer, target, species_of(state.role(target))};
}

GameState apply_divination(GameState state, const DivineRecord& record) {
  require_phase(state, Phase::Night);
  if (divine(state, record.target) != record) {
    throw GameError(GameErrc::InvalidTarget, "divination record does not match the game state");
  }
  state.divinations.push_back(record);
  return state;
}

std::vector<AgentId> vote_candidates(const GameState& state, AgentId voter) {
  std::vector<AgentId> out;
  for (AgentId id : state.alive.members()) {
    if (id != voter) out.push_back(id);
  }
  return out;
}

std::vector<AgentId> attack_candidates(const GameState& state) {
  std::vector<AgentId> out;
  for (AgentId id : state.alive.members()) {
    if (state.role(id) != Role::Werewolf) out.push_back(id);
  }
  return out;
}

std::vector<AgentId> divine_candidates(const GameState& state) {
  std::vector<AgentId> out;
  for (AgentId id : state.alive.members()) {
    if (state.role(id) != Role::Seer) out.push_back(id);
  }
  return out;
}

std::optional<AgentId> alive_seer(const GameState& state) {
  for (AgentId id : state.alive.members()) {
    if (state.role(id) == Role::Seer) return id;
  }
  return std::nullopt;
}

std::optional<AgentId> alive_werewolf(const GameState& state) {
  for (AgentId id : state.alive.members()) {
    if (state.role(id) == Role::Werewolf) return id;
  }
  return std::nullopt;
}

}  // namespace wolf::game
