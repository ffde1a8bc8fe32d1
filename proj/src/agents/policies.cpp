#include <algorithm>

#include "wolf/agents/grammar.hpp"
#include "wolf/agents/policies.hpp"
#include "wolf/llm/steps.hpp"

namespace wolf::agents {

namespace steps = llm::steps;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// Models sometimes echo a speaker tag or wrap the line in quotes.
std::string clean_utterance(std::string_view raw, AgentId self) {
  std::string s = trim(raw);
  for (const std::string& prefix : {game::agent_name(self) + ":", std::string("Utterance:")}) {
    if (s.rfind(prefix, 0) == 0) s = trim(s.substr(prefix.size()));
  }
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = trim(s.substr(1, s.size() - 2));
  if (s.empty()) throw llm::BackendFailure("empty utterance");
  return s;
}

StrategyCard with_targets(StrategyCard card, std::optional<AgentId> target, std::optional<AgentId> divine) {
  std::map<std::string, std::string> values;
  if (target) values["TARGET"] = game::agent_name(*target);
  if (divine) values["DIVINE_TARGET"] = game::agent_name(*divine);
  card.guideline = fill_template(card.guideline, values);
  return card;
}

struct Generation {
  std::string_view step;
  std::string suffix;  // appended after the six components
  llm::Purpose purpose = llm::Purpose::Talk;
  std::optional<AgentId> focus;
  std::optional<AgentId> divine_focus;
};

std::string generate(AgentContext& ctx, const StrategyCard& card, const Generation& g) {
  const PromptBundle bundle = build_prompt(ctx.memory, card, ctx.persona, ctx.assets);
  llm::CompletionRequest req;
  req.purpose = g.purpose;
  req.temperature = llm::default_temperature(g.purpose);
  req.prompt_text = render_prompt(bundle);
  req.prompt_text += "\n### Instruction\n";
  req.prompt_text += g.suffix.empty()
                         ? fill_template(ctx.assets.templates.generate, {{"AGENT", game::agent_name(ctx.memory.self)}})
                         : g.suffix;
  req.prompt_text += "\n";
  req.digest = make_digest(ctx, g.step);
  req.digest->strategy_id = card.id;
  req.digest->focus = g.focus;
  req.digest->divine_focus = g.divine_focus;
  return ctx.backend.complete(req);
}

std::string utterance_suffix(const AgentContext& ctx, bool with_demos) {
  std::string s = fill_template(ctx.assets.templates.generate, {{"AGENT", game::agent_name(ctx.memory.self)}});
  if (with_demos) s += "\n\nExamples:\n" + ctx.assets.villager_utterance_demos;
  return s;
}

// Picks the day's card from `options`, once per day.
StrategyCard select_card(AgentContext& ctx, const std::vector<StrategyCard>& options, std::string_view step) {
  AgentMemory& m = ctx.memory;
  if (m.strategy_today) {
    for (const auto& c : options) {
      if (c.id == *m.strategy_today) return c;
    }
  }
  std::size_t index = 0;
  if (options.front().selection == SelectionMode::FixedSequence) {
    index = static_cast<std::size_t>(std::max(0, m.day - 1)) % options.size();
  } else {
    std::string listing;
    for (std::size_t i = 0; i < options.size(); ++i) {
      listing += std::to_string(i + 1) + ". " + options[i].title + ": " + options[i].guideline + "\n";
    }
    llm::CompletionRequest req;
    req.purpose = llm::Purpose::Talk;
    req.temperature = 0.0;
    req.max_tokens = 64;
    std::string history = render_summaries(m.summaries) + "Today (Day " + std::to_string(m.day) + "):\n" +
                          render_history(m.today_talks);
    req.prompt_text = fill_template(ctx.assets.templates.select_strategy,
                                    {{"AGENT", game::agent_name(m.self)},
                                     {"ROLE", std::string(game::to_string(m.own_role))},
                                     {"STRATEGIES", listing},
                                     {"HISTORY", history}});
    req.digest = make_digest(ctx, step);
    req.digest->options = static_cast<int>(options.size());
    try {
      if (auto choice = extract_choice(ctx.backend.complete(req), static_cast<int>(options.size()))) {
        index = static_cast<std::size_t>(*choice - 1);
      } else {
        ctx.note("strategy selection unreadable; using the first card");
      }
    } catch (const llm::BackendFailure& e) {
      ctx.note(std::string("strategy selection failed: ") + e.what());
    }
  }
  m.strategy_today = options[index].id;
  return options[index];
}

}  // namespace

llm::ScriptDigest make_digest(const AgentContext& ctx, std::string_view step) {
  const AgentMemory& m = ctx.memory;
  llm::ScriptDigest d;
  d.step = std::string(step);
  d.self = m.self;
  d.role = m.own_role;
  d.day = m.day;
  d.turn = std::max(0, m.talk_requests_today - 1);
  d.strategy_id = m.strategy_today.value_or("");
  d.candidates = m.others_alive();
  d.alive = m.alive;
  d.today = m.today_talks;
  d.divinations = m.divinations;
  return d;
}

std::string greet(AgentContext& ctx) {
  return clean_utterance(generate(ctx, ctx.assets.card("common.greeting"), {steps::kGreeting}), ctx.memory.self);
}

std::string villager_generate(AgentContext& ctx, int turn) {
  const StrategyCard& base = ctx.assets.card("villager.discussion");
  if (turn == 0) {
    return clean_utterance(generate(ctx, base, {steps::kVillagerDirect}), ctx.memory.self);
  }
  // Second turn onwards: reason first, then speak along the generated strategy.
  const std::string reasoning_prompt = fill_template(ctx.assets.templates.villager_reasoning,
                                                     {{"DEMOS", ctx.assets.villager_reasoning_demos}});
  const std::string reasoning = trim(generate(ctx, base, {steps::kVillagerReasoning, reasoning_prompt}));
  if (reasoning.empty()) throw llm::BackendFailure("empty reasoning");

  StrategyCard generated;
  generated.id = "villager.generated";
  generated.title = "Your reasoning and strategy for this turn";
  generated.guideline = reasoning;
  return clean_utterance(generate(ctx, generated, {steps::kVillagerUtterance, utterance_suffix(ctx, true)}),
                         ctx.memory.self);
}

std::string seer_generate(AgentContext& ctx, int /*turn*/) {
  StrategyCard card = select_card(ctx, ctx.assets.cards_for("seer", ctx.memory.day), steps::kSeerSelect);
  card.guideline += "\n" + ctx.assets.seer_guidelines;
  return clean_utterance(generate(ctx, card, {steps::kSeerUtterance}), ctx.memory.self);
}

std::string werewolf_generate(AgentContext& ctx, int /*turn*/) {
  const StrategyCard card = select_card(ctx, ctx.assets.cards_for("werewolf", ctx.memory.day), steps::kWerewolfSelect);
  return clean_utterance(generate(ctx, card, {steps::kWerewolfUtterance}), ctx.memory.self);
}

std::string possessed_generate(AgentContext& ctx, int day, int turn) {
  AgentMemory& m = ctx.memory;
  if (day <= 1) {
    if (!m.inferred_seer) {
      const auto candidates = m.others_alive();
      llm::CompletionRequest req;
      req.purpose = llm::Purpose::Talk;
      req.temperature = 0.0;
      const std::string day0 = m.summaries.empty() ? std::string("(no Day 0 dialogue)\n")
                                                     : render_summaries(std::span(m.summaries.data(), 1));
      req.prompt_text = fill_template(ctx.assets.templates.possessed_infer,
                                      {{"AGENT", game::agent_name(m.self)},
                                       {"SUMMARY", day0},
                                       {"CANDIDATE", candidate_list(candidates)}});
      req.digest = make_digest(ctx, steps::kPossessedInfer);
      std::optional<AgentId> seer;
      try {
        seer = extract_target(ctx.backend.complete(req), candidates);
      } catch (const llm::BackendFailure& e) {
        ctx.note(std::string("seer inference failed: ") + e.what());
      }
      if (!seer) {
        std::uniform_int_distribution<std::size_t> dist(0, candidates.size() - 1);
        seer = candidates[dist(ctx.rng)];
        ctx.note("seer inference unreadable; guessed " + game::agent_name(*seer));
      }
      m.inferred_seer = seer;
    }
    const char* id = turn == 0 ? "possessed.day1.fake_claim" : "possessed.day1.persuade";
    m.strategy_today = id;
    const StrategyCard card = with_targets(ctx.assets.card(id), m.inferred_seer, std::nullopt);
    return clean_utterance(generate(ctx, card, {steps::kPossessedUtterance, {}, llm::Purpose::Talk, m.inferred_seer}),
                           m.self);
  }
  const char* id = turn == 0 ? "possessed.day2.come_out" : "possessed.day2.invite_werewolf";
  m.strategy_today = id;
  return clean_utterance(generate(ctx, ctx.assets.card(id), {steps::kPossessedUtterance}), m.self);
}

std::string declare_vote(AgentContext& ctx) {
  AgentMemory& m = ctx.memory;
  const auto candidates = m.others_alive();
  AgentId target;
  if (m.own_role == game::Role::Possessed && m.day <= 1 && m.inferred_seer &&
      std::find(candidates.begin(), candidates.end(), *m.inferred_seer) != candidates.end()) {
    target = *m.inferred_seer;
  } else {
    target = decide_target(DecisionKind::Vote, ctx, candidates).target;
  }

  std::optional<AgentId> divine;
  const char* card_id = "common.vote_declaration";
  if (m.own_role == game::Role::Seer) {
    std::vector<AgentId> fresh;
    for (AgentId id : candidates) {
      const bool seen = std::any_of(m.divinations.begin(), m.divinations.end(), [&](const auto& d) { return d.target == id; });
      if (!seen) fresh.push_back(id);
    }
    divine = decide_target(DecisionKind::Divine, ctx, fresh.empty() ? candidates : fresh).target;
    m.declared_divine_target = divine;
    card_id = "seer.vote_declaration";
  }

  const StrategyCard card = with_targets(ctx.assets.card(card_id), target, divine);
  std::string text;
  try {
    text = clean_utterance(
        generate(ctx, card, {steps::kVoteDeclaration, {}, llm::Purpose::VoteDeclaration, target, divine}), m.self);
  } catch (const llm::BackendFailure& e) {
    ctx.note(std::string("vote declaration failed: ") + e.what());
  }
  // The declaration must parse back to the target it announces.
  if (text.empty() && divine) text = "Tonight I will divine " + game::agent_name(*divine) + ".";
  if (extract_declared_vote(text) != target.value()) {
    if (!text.empty()) text += ' ';
    text += "I vote for " + game::agent_name(target) + ".";
  }
  m.declared_vote_target = target;
  return text;
}

}  // namespace wolf::agents
