#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wolf/agents/assets.hpp"
#include "wolf/agents/memory.hpp"
#include "wolf/agents/policies.hpp"
#include "wolf/game/rules.hpp"
#include "wolf/llm/backend.hpp"
#include "wolf/protocol/message.hpp"

namespace wolf::agents {

struct AgentOptions {
  std::uint64_t seed = 0;
  int max_talk_turns_per_day = 10;
  int day0_talk_turns = 3;
};

/// A protocol client playing whichever role INITIALIZE hands it.
class Agent {
 public:
  Agent(std::shared_ptr<const AgentAssets> assets, llm::Backend& backend, AgentOptions options);

  /// Reply for requests (TALK, VOTE, DIVINE, ATTACK); nullopt for notifications.
  std::optional<protocol::Reply> handle(const protocol::Message& message);

  const AgentMemory& memory() const { return memory_; }
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  void ingest(const protocol::GameView& view);
  std::string talk();
  AgentId vote();
  AgentId divine_target();
  AgentId attack_target();
  AgentContext context();

  std::shared_ptr<const AgentAssets> assets_;
  llm::Backend& backend_;
  AgentOptions options_;
  AgentMemory memory_;
  game::Rng rng_;
  const PersonaCard* persona_ = nullptr;
  std::vector<std::string> diagnostics_;
};

}  // namespace wolf::agents
