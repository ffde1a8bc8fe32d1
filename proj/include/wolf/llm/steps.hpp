#pragma once

#include <string_view>

// Names of the agent pipeline steps carried in ScriptDigest::step.
namespace wolf::llm::steps {

inline constexpr std::string_view kGreeting = "greeting";
inline constexpr std::string_view kVillagerDirect = "villager.direct";
inline constexpr std::string_view kVillagerReasoning = "villager.reasoning";
inline constexpr std::string_view kVillagerUtterance = "villager.utterance";
inline constexpr std::string_view kSeerSelect = "seer.select_strategy";
inline constexpr std::string_view kSeerUtterance = "seer.utterance";
inline constexpr std::string_view kWerewolfSelect = "werewolf.select_strategy";
inline constexpr std::string_view kWerewolfUtterance = "werewolf.utterance";
inline constexpr std::string_view kPossessedInfer = "possessed.infer_seer";
inline constexpr std::string_view kPossessedUtterance = "possessed.utterance";
inline constexpr std::string_view kVoteDeclaration = "vote_declaration";
inline constexpr std::string_view kSummary = "summary";
inline constexpr std::string_view kDecideVote = "decide.vote";
inline constexpr std::string_view kDecideDivine = "decide.divine";
inline constexpr std::string_view kReformat = "decide.reformat";
inline constexpr std::string_view kAttack = "attack";

}  // namespace wolf::llm::steps
