#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wolf/game/types.hpp"

namespace wolf::agents {

class AssetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Hand-written character: 3-5 profile bullets and 3-5 example utterances.
struct PersonaCard {
  std::string id;
  std::vector<game::Role> roles;  // roles this persona is bound to
  std::vector<std::string> profile;
  std::vector<std::string> examples;

  bool binds(game::Role r) const;
  bool operator==(const PersonaCard&) const = default;
};

enum class ApplicableDay { Day1, Day2, Any };
enum class SelectionMode { LlmSelected, FixedSequence };

struct StrategyCard {
  std::string id;
  ApplicableDay day = ApplicableDay::Any;
  std::string title;
  std::string guideline;
  SelectionMode selection = SelectionMode::LlmSelected;

  bool applies_on(int day) const;
  bool operator==(const StrategyCard&) const = default;
};

/// Prompt templates. Placeholders are bracketed upper-case names, e.g.
/// [HISTORY], [CANDIDATE], [SUMMARY]; see assets/README.md for the full list.
struct PromptTemplates {
  std::string task;
  std::string rules;
  std::string generate;            // closing instruction for utterance prompts
  std::string summary;             // [HISTORY]
  std::string decide_vote;         // [HISTORY] [CANDIDATE]
  std::string decide_divine;       // [HISTORY] [CANDIDATE]
  std::string attack;              // [STRATEGY] [SUMMARY] [HISTORY] [CANDIDATE]
  std::string select_strategy;     // [STRATEGIES] [HISTORY]
  std::string possessed_infer;     // [SUMMARY] [CANDIDATE]
  std::string villager_reasoning;  // [DEMOS]
  std::string reformat;            // [ANSWER] [CANDIDATE]
};

struct AgentAssets {
  std::vector<PersonaCard> personas;
  // Card sets keyed by group: "common", "villager", "seer", "werewolf", "possessed".
  std::map<std::string, std::vector<StrategyCard>> cards;
  std::string seer_guidelines;
  std::string attack_strategy;
  std::string villager_reasoning_demos;
  std::string villager_utterance_demos;
  PromptTemplates templates;

  const PersonaCard& persona_for(game::Role role) const;
  const StrategyCard& card(std::string_view id) const;
  /// Cards of `group` usable on `day`, in file order.
  std::vector<StrategyCard> cards_for(std::string_view group, int day) const;
};

AgentAssets load_assets(const std::filesystem::path& dir);

/// Built-in asset directory (the repository's assets/).
std::filesystem::path default_asset_dir();

}  // namespace wolf::agents
