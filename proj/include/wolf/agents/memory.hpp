#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wolf/game/types.hpp"

namespace wolf::agents {

using game::AgentId;

/// End-of-day digest of what each speaker claimed.
struct DaySummary {
  int day = 0;
  std::map<AgentId, std::string> per_agent_claims;
  bool degraded = false;  // backend failed; claims are truncated raw utterances

  bool operator==(const DaySummary&) const = default;
};

/// Everything one agent remembers. Owned exclusively by its agent.
struct AgentMemory {
  AgentId self;
  game::Role own_role = game::Role::Villager;
  int day = 0;
  std::vector<AgentId> alive;

  std::vector<DaySummary> summaries;          // ordered by day
  std::vector<game::TalkEntry> today_talks;
  std::vector<game::DivineRecord> divinations;  // own results (seer)
  std::vector<game::ExecutionRecord> executions;
  std::vector<game::ExecutionRecord> attacks;  // day = night of the attack
  std::vector<game::VoteRecord> votes;

  std::optional<AgentId> declared_vote_target;
  std::optional<AgentId> declared_divine_target;
  std::optional<AgentId> inferred_seer;  // possessed; frozen after the first inference
  std::optional<std::string> strategy_today;
  int talk_requests_today = 0;

  std::vector<AgentId> others_alive() const;
  bool operator==(const AgentMemory&) const = default;
};

}  // namespace wolf::agents
