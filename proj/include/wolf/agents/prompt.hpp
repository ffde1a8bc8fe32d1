#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wolf/agents/assets.hpp"
#include "wolf/agents/memory.hpp"

namespace wolf::agents {

class MissingComponent : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The six parts of an utterance-generation prompt, in rendering order.
struct PromptBundle {
  int day = 0;
  std::string task_description;
  PersonaCard persona;
  std::string game_rules;
  StrategyCard strategy;
  std::vector<DaySummary> prior_day_summaries;
  std::vector<std::string> known_facts;  // executions, attacks, own divinations
  std::vector<game::TalkEntry> today_history;
};

// Section headings, in order.
inline constexpr std::string_view kTaskHeading = "### Task";
inline constexpr std::string_view kPersonaHeading = "### Persona";
inline constexpr std::string_view kRulesHeading = "### Game Rules";
inline constexpr std::string_view kStrategyHeading = "### Strategy";
inline constexpr std::string_view kSummaryHeading = "### Dialogue Summary";
inline constexpr std::string_view kTodayHeading = "### Today's Dialogue";

PromptBundle build_prompt(const AgentMemory& memory, const StrategyCard& strategy, const PersonaCard& persona,
                          const AgentAssets& assets);

/// Byte-stable text of a bundle.
std::string render_prompt(const PromptBundle& bundle);

std::string render_persona(const PersonaCard& persona);
std::string render_summaries(std::span<const DaySummary> summaries);
/// "Agent[0N]: text" per line; control tokens are left out.
std::string render_history(std::span<const game::TalkEntry> talks);
std::vector<std::string> known_facts(const AgentMemory& memory);

/// Replaces every "[KEY]" with its value. Unknown placeholders are kept.
std::string fill_template(std::string_view tpl, const std::map<std::string, std::string>& values);

std::string candidate_list(std::span<const AgentId> candidates);

}  // namespace wolf::agents
