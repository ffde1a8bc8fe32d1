#pragma once

#include <random>
#include <span>
#include <vector>

#include "wolf/game/types.hpp"

// Pure game rules. Every transition takes the state by value and returns the
// successor; the input is left untouched when an error is thrown.
namespace wolf::game {

using Rng = std::mt19937_64;

/// Uniform permutation of {Seer, Werewolf, Possessed, Villager, Villager}.
RoleAssignment assign_roles(Rng& rng);

GameState new_game(const RoleAssignment& roles, std::uint64_t seed);

/// Plurality winner. Ties are broken uniformly at random among the tied
/// agents (sorted by id), consuming one draw from `rng` only when a tie exists.
AgentId tally_votes(std::span<const VoteRecord> votes, AliveSet alive, Rng& rng);

Status check_win(const RoleAssignment& roles, AliveSet alive);
inline Status check_win(const GameState& s) { return check_win(s.roles, s.alive); }

// Phase machine:
//   day 0:  Talk -> Night (divination only) -> start_day
//   day n:  Talk -> Vote -> (execution) Night -> (attack, divination) -> start_day
[[nodiscard]] GameState record_talk(GameState state, TalkEntry entry);
[[nodiscard]] GameState close_talk(GameState state);
[[nodiscard]] GameState record_votes(GameState state, std::span<const VoteRecord> votes);
[[nodiscard]] GameState resolve_elimination(GameState state, AgentId target);
[[nodiscard]] GameState resolve_attack(GameState state, AgentId target);
[[nodiscard]] GameState start_day(GameState state);

/// Result of divining `target` tonight; does not modify the state.
DivineRecord divine(const GameState& state, AgentId target);
[[nodiscard]] GameState apply_divination(GameState state, const DivineRecord& record);

std::vector<AgentId> vote_candidates(const GameState& state, AgentId voter);
std::vector<AgentId> attack_candidates(const GameState& state);
std::vector<AgentId> divine_candidates(const GameState& state);

std::optional<AgentId> alive_seer(const GameState& state);
std::optional<AgentId> alive_werewolf(const GameState& state);

}  // namespace wolf::game
