#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "wolf/game/types.hpp"

// Surface patterns shared by agents, the scripted backend and the log analyzer.
namespace wolf::agents {

/// Target extraction grammar. Accepts "Agent[0N]", "Agent[N]", "Agent N" or a
/// bare single digit; the last match in the text wins. Returns the raw number
/// (which may be outside 1..5).
std::optional<int> extract_agent_number(std::string_view text);

/// extract_agent_number, accepted only when the result is one of `candidates`.
std::optional<game::AgentId> extract_target(std::string_view text, std::span<const game::AgentId> candidates);

/// Target of a vote declaration: the last agent named after a "vote" word in
/// the same sentence, else extract_agent_number over the whole text.
std::optional<int> extract_declared_vote(std::string_view text);

/// Last integer in the text within [1, max]; used for strategy selection replies.
std::optional<int> extract_choice(std::string_view text, int max);

struct DivinationReport {
  game::AgentId target;
  game::Species result;
  bool operator==(const DivinationReport&) const = default;
};

struct UtteranceFacts {
  bool seer_claim = false;                   // "I am the seer"
  std::optional<game::Role> coming_out;      // "I am the possessed", "I'm a villager", ...
  std::optional<DivinationReport> report;    // "I divined Agent[03] ... werewolf"
  bool operator==(const UtteranceFacts&) const = default;
};

UtteranceFacts analyze_utterance(std::string_view text);

}  // namespace wolf::agents
