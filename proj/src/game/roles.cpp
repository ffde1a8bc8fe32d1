#include <algorithm>
#include <bit>

#include "wolf/game/types.hpp"

namespace wolf::game {

std::string_view to_string(Role r) {
  switch (r) {
    case Role::Villager: return "VILLAGER";
    case Role::Seer: return "SEER";
    case Role::Werewolf: return "WEREWOLF";
    case Role::Possessed: return "POSSESSED";
  }
  return "VILLAGER";
}

std::string_view to_string(Species s) { return s == Species::Wolf ? "WEREWOLF" : "HUMAN"; }

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::Talk: return "TALK";
    case Phase::Vote: return "VOTE";
    case Phase::Night: return "NIGHT";
  }
  return "TALK";
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Ongoing: return "ONGOING";
    case Status::HumanWin: return "HUMAN";
    case Status::WerewolfWin: return "WEREWOLF";
  }
  return "ONGOING";
}

std::string_view to_string(Team t) { return t == Team::Werewolf ? "WEREWOLF" : "HUMAN"; }

std::optional<Role> role_from_string(std::string_view s) {
  for (Role r : {Role::Villager, Role::Seer, Role::Werewolf, Role::Possessed}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

std::optional<Species> species_from_string(std::string_view s) {
  if (s == "HUMAN") return Species::Human;
  if (s == "WEREWOLF") return Species::Wolf;
  return std::nullopt;
}

std::optional<Phase> phase_from_string(std::string_view s) {
  for (Phase p : {Phase::Talk, Phase::Vote, Phase::Night}) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

std::optional<Status> status_from_string(std::string_view s) {
  for (Status st : {Status::Ongoing, Status::HumanWin, Status::WerewolfWin}) {
    if (to_string(st) == s) return st;
  }
  return std::nullopt;
}

std::string_view to_string(GameErrc code) {
  switch (code) {
    case GameErrc::MissingVote: return "MissingVote";
    case GameErrc::InvalidVote: return "InvalidVote";
    case GameErrc::NotAlive: return "NotAlive";
    case GameErrc::GameFinished: return "GameFinished";
    case GameErrc::InvalidTarget: return "InvalidTarget";
    case GameErrc::SeerDead: return "SeerDead";
    case GameErrc::WrongPhase: return "WrongPhase";
    case GameErrc::InvalidRoles: return "InvalidRoles";
  }
  return "GameError";
}

std::string agent_name(AgentId id) {
  std::string out = "Agent[0";
  out += static_cast<char>('0' + id.value());
  out += ']';
  return out;
}

bool valid_role_multiset(const RoleAssignment& roles) {
  auto count = [&](Role r) { return std::count(roles.begin(), roles.end(), r); };
  return count(Role::Seer) == 1 && count(Role::Werewolf) == 1 && count(Role::Possessed) == 1 &&
         count(Role::Villager) == 2;
}

AgentId werewolf_of(const RoleAssignment& roles) {
  auto it = std::find(roles.begin(), roles.end(), Role::Werewolf);
  return AgentId{static_cast<int>(it - roles.begin()) + 1};
}

int AliveSet::size() const { return std::popcount(mask_); }

std::vector<AgentId> AliveSet::members() const {
  std::vector<AgentId> out;
  for (AgentId id : all_agents()) {
    if (contains(id)) out.push_back(id);
  }
  return out;
}

}  // namespace wolf::game
