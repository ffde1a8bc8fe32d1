#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "wolf/agents/assets.hpp"
#include "wolf/llm/backend.hpp"
#include "wolf/match/orchestrator.hpp"

// Five built-in agents against one orchestrator.
namespace wolf::match {

enum class Transport { InProcess, Socket };

struct SelfPlayOptions {
  std::uint64_t seed = 0;
  int max_talk_turns_per_day = 10;
  int day0_talk_turns = 3;
  std::shared_ptr<const agents::AgentAssets> assets;
  /// Shared by all five agents. Null: a ScriptedBackend seeded with `seed`.
  llm::Backend* backend = nullptr;
  Transport transport = Transport::InProcess;
  std::chrono::milliseconds timeout_per_request{120000};
  std::function<void(AgentId, const std::string&)> on_send;
};

struct SelfPlayResult {
  MatchResult match;
  std::array<std::vector<std::string>, game::kPlayerCount> diagnostics;
};

std::uint64_t agent_seed(std::uint64_t match_seed, AgentId id);

SelfPlayResult self_play(const SelfPlayOptions& options);

}  // namespace wolf::match
