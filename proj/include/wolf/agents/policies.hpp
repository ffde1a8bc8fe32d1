#pragma once

#include <string>
#include <vector>

#include "wolf/agents/assets.hpp"
#include "wolf/agents/memory.hpp"
#include "wolf/agents/prompt.hpp"
#include "wolf/game/rules.hpp"
#include "wolf/llm/backend.hpp"

namespace wolf::agents {

/// Everything a role policy needs for one call. The memory is mutated
/// (strategy choice, inferred seer, declarations).
struct AgentContext {
  const AgentAssets& assets;
  llm::Backend& backend;
  AgentMemory& memory;
  game::Rng& rng;
  const PersonaCard& persona;
  int turn_budget = 10;  // talk turns on the current day
  std::vector<std::string>* diagnostics = nullptr;

  void note(std::string message) const;
};

/// One end-of-day summary. On backend failure the call is retried once, then
/// a degraded summary of truncated raw utterances is returned.
DaySummary summarize_day(std::span<const game::TalkEntry> history, int day, AgentContext& ctx);

/// Parses "Agent[0N]: ..." lines; speakers missing from the completion get a
/// placeholder entry so that every speaker is covered.
DaySummary parse_summary(std::string_view completion, std::span<const game::TalkEntry> history, int day);

std::string greet(AgentContext& ctx);
std::string villager_generate(AgentContext& ctx, int turn);
std::string seer_generate(AgentContext& ctx, int turn);
std::string werewolf_generate(AgentContext& ctx, int turn);
std::string possessed_generate(AgentContext& ctx, int day, int turn);

/// Final-turn utterance: decides the vote (and, for the seer, tonight's
/// divination) and declares it. Sets memory.declared_vote_target.
std::string declare_vote(AgentContext& ctx);

enum class DecisionKind { Vote, Divine };

struct TargetDecision {
  AgentId target;
  std::string reasoning;
  bool fallback = false;  // extraction failed twice; target drawn at random
};

/// Zero-shot chain-of-thought target choice among `candidates` (non-empty,
/// alive, without self). A vote always equals the declared target when one
/// exists.
TargetDecision decide_target(DecisionKind kind, AgentContext& ctx, const std::vector<AgentId>& candidates);

/// Name-only attack choice among alive non-werewolves.
TargetDecision decide_attack(AgentContext& ctx, const std::vector<AgentId>& candidates);

/// Digest for the scripted backend, filled from the context.
llm::ScriptDigest make_digest(const AgentContext& ctx, std::string_view step);

}  // namespace wolf::agents
