#pragma once

// Independent oracles, generators and fault injection shared by the unit
// tests and the acceptance binary.

#include <optional>
#include <string>
#include <vector>

#include "wolf/game/rules.hpp"
#include "wolf/match/event_log.hpp"
#include "wolf/protocol/message.hpp"

namespace wolf::testkit {

// Winner from first principles: count living members of each side.
game::Status win_oracle(const game::RoleAssignment& roles, unsigned alive_mask);

/// Every distinct arrangement of the five-role multiset.
std::vector<game::RoleAssignment> all_role_assignments();

/// Agents with the highest vote count, ascending.
std::vector<game::AgentId> argmax_oracle(const std::vector<game::VoteRecord>& votes);

/// Empty when the line respects the visibility rules for `state`; otherwise a
/// description of the first leak found.
std::string leakage(const std::string& encoded_view, const game::GameState& state);

protocol::Message random_message(game::Rng& rng);

enum class Fault { VoteMismatch, DeadSpeaker, DuplicateTurnSpeech, MissingSeerReport };
inline constexpr Fault kAllFaults[] = {Fault::VoteMismatch, Fault::DeadSpeaker, Fault::DuplicateTurnSpeech,
                                       Fault::MissingSeerReport};
const char* fault_name(Fault f);

/// Mutates a clean log so that exactly one fault of the given kind appears.
/// nullopt when the log offers no place for it.
std::optional<match::EventLog> inject(const match::EventLog& clean, Fault fault, game::Rng& rng);

}  // namespace wolf::testkit
