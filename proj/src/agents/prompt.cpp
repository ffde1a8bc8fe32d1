#include "wolf/agents/prompt.hpp"

#include <algorithm>
#include <tuple>

namespace wolf::agents {

namespace {

std::string display_role(game::Role r) {
  switch (r) {
    case game::Role::Villager: return "villager";
    case game::Role::Seer: return "seer";
    case game::Role::Werewolf: return "werewolf";
    case game::Role::Possessed: return "possessed";
  }
  return "villager";
}

}  // namespace

std::vector<AgentId> AgentMemory::others_alive() const {
  std::vector<AgentId> out;
  for (AgentId id : alive) {
    if (id != self) out.push_back(id);
  }
  return out;
}

std::string fill_template(std::string_view tpl, const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(tpl.size());
  std::size_t i = 0;
  while (i < tpl.size()) {
    if (tpl[i] == '[') {
      const auto close = tpl.find(']', i);
      if (close != std::string_view::npos) {
        auto it = values.find(std::string(tpl.substr(i + 1, close - i - 1)));
        if (it != values.end()) {
          out += it->second;
          i = close + 1;
          continue;
        }
      }
    }
    out += tpl[i++];
  }
  return out;
}

std::string candidate_list(std::span<const AgentId> candidates) {
  std::string out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (i) out += ", ";
    out += game::agent_name(candidates[i]);
  }
  return out;
}

std::string render_persona(const PersonaCard& persona) {
  std::string out = "Profile:\n";
  for (const auto& p : persona.profile) out += "- " + p + "\n";
  out += "Utterance examples:\n";
  for (const auto& e : persona.examples) out += "- " + e + "\n";
  return out;
}

std::string render_summaries(std::span<const DaySummary> summaries) {
  std::string out;
  for (const auto& s : summaries) {
    out += "Day " + std::to_string(s.day) + (s.degraded ? " (raw excerpts, summary unavailable):\n" : ":\n");
    for (const auto& [id, claims] : s.per_agent_claims) out += game::agent_name(id) + ": " + claims + "\n";
  }
  return out;
}

std::string render_history(std::span<const game::TalkEntry> talks) {
  std::string out;
  for (const auto& t : talks) {
    if (t.is_control()) continue;
    out += game::agent_name(t.speaker) + ": " + t.content + "\n";
  }
  return out;
}

std::vector<std::string> known_facts(const AgentMemory& memory) {
  std::vector<std::tuple<int, int, std::string>> facts;
  for (const auto& e : memory.executions) {
    facts.emplace_back(e.day, 0, "Day " + std::to_string(e.day) + ": " + game::agent_name(e.target) + " was executed by vote.");
  }
  for (const auto& a : memory.attacks) {
    facts.emplace_back(a.day, 1,
                       "Night of Day " + std::to_string(a.day) + ": " + game::agent_name(a.target) + " was attacked by the werewolf.");
  }
  for (const auto& d : memory.divinations) {
    facts.emplace_back(d.day, 2,
                       "Your divination on the night of Day " + std::to_string(d.day) + ": " + game::agent_name(d.target) +
                           (d.result == game::Species::Wolf ? " is a werewolf." : " is human."));
  }
  std::stable_sort(facts.begin(), facts.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });
  std::vector<std::string> out;
  for (auto& f : facts) out.push_back(std::move(std::get<2>(f)));
  return out;
}

PromptBundle build_prompt(const AgentMemory& memory, const StrategyCard& strategy, const PersonaCard& persona,
                          const AgentAssets& assets) {
  if (!persona.binds(memory.own_role)) {
    throw MissingComponent("persona " + persona.id + " is not bound to role " + std::string(game::to_string(memory.own_role)));
  }
  if (assets.templates.task.empty()) throw MissingComponent("task description");
  if (assets.templates.rules.empty()) throw MissingComponent("game rules");
  if (strategy.guideline.empty()) throw MissingComponent("strategy " + strategy.id);
  if (persona.profile.empty() || persona.examples.empty()) throw MissingComponent("persona " + persona.id);

  PromptBundle b;
  b.day = memory.day;
  b.task_description = fill_template(assets.templates.task, {{"AGENT", game::agent_name(memory.self)},
                                                              {"ROLE", display_role(memory.own_role)}});
  b.persona = persona;
  b.game_rules = assets.templates.rules;
  b.strategy = strategy;
  for (const auto& s : memory.summaries) {
    if (s.day < memory.day) b.prior_day_summaries.push_back(s);
  }
  std::stable_sort(b.prior_day_summaries.begin(), b.prior_day_summaries.end(),
                   [](const DaySummary& a, const DaySummary& c) { return a.day < c.day; });
  b.known_facts = known_facts(memory);
  for (const auto& t : memory.today_talks) {
    if (t.day == memory.day) b.today_history.push_back(t);
  }
  return b;
}

std::string render_prompt(const PromptBundle& b) {
  std::string out;
  out += std::string(kTaskHeading) + "\n" + b.task_description + "\n\n";
  out += std::string(kPersonaHeading) + "\n" + render_persona(b.persona) + "\n";
  out += std::string(kRulesHeading) + "\n" + b.game_rules + "\n\n";
  out += std::string(kStrategyHeading) + "\n" + b.strategy.title + ": " + b.strategy.guideline + "\n\n";

  out += std::string(kSummaryHeading) + "\n";
  if (b.prior_day_summaries.empty()) {
    out += "(no previous days)\n";
  } else {
    out += render_summaries(b.prior_day_summaries);
  }
  if (!b.known_facts.empty()) {
    out += "Known facts:\n";
    for (const auto& f : b.known_facts) out += "- " + f + "\n";
  }
  out += "\n";

  out += std::string(kTodayHeading) + " (Day " + std::to_string(b.day) + ")\n";
  const std::string history = render_history(b.today_history);
  out += history.empty() ? "(nothing said yet)\n" : history;
  return out;
}

}  // namespace wolf::agents
