#include <algorithm>

#include "wolf/agents/grammar.hpp"
#include "wolf/agents/policies.hpp"
#include "wolf/llm/steps.hpp"

namespace wolf::agents {

namespace {

std::string decision_history(const AgentMemory& m) {
  std::string out = render_summaries(m.summaries);
  const auto facts = known_facts(m);
  if (!facts.empty()) {
    out += "Known facts:\n";
    for (const auto& f : facts) out += "- " + f + "\n";
  }
  out += "Today (Day " + std::to_string(m.day) + "):\n" + render_history(m.today_talks);
  return out;
}

AgentId random_pick(game::Rng& rng, const std::vector<AgentId>& candidates) {
  std::uniform_int_distribution<std::size_t> dist(0, candidates.size() - 1);
  return candidates[dist(rng)];
}

// Asks once, then once more with a reformat prompt, then falls back to a
// seeded random candidate.
TargetDecision ask_for_target(AgentContext& ctx, llm::CompletionRequest req, const std::vector<AgentId>& candidates,
                              std::string_view what) {
  std::string answer;
  try {
    answer = ctx.backend.complete(req);
    if (auto t = extract_target(answer, candidates)) return {*t, answer, false};

    req.prompt_text = fill_template(ctx.assets.templates.reformat,
                                    {{"ANSWER", answer}, {"CANDIDATE", candidate_list(candidates)}});
    req.digest->step = llm::steps::kReformat;
    const std::string retry = ctx.backend.complete(req);
    if (auto t = extract_target(retry, candidates)) return {*t, answer + "\n" + retry, false};
    answer += "\n" + retry;
  } catch (const llm::BackendFailure& e) {
    answer += std::string("\nbackend failure: ") + e.what();
  }
  const AgentId pick = random_pick(ctx.rng, candidates);
  ctx.note(std::string(what) + " extraction failed on day " + std::to_string(ctx.memory.day) + "; fell back to " +
           game::agent_name(pick));
  return {pick, answer, true};
}

}  // namespace

TargetDecision decide_target(DecisionKind kind, AgentContext& ctx, const std::vector<AgentId>& candidates) {
  if (candidates.empty()) throw std::invalid_argument("decide_target needs at least one candidate");
  const AgentMemory& m = ctx.memory;
  if (kind == DecisionKind::Vote && m.declared_vote_target &&
      std::find(candidates.begin(), candidates.end(), *m.declared_vote_target) != candidates.end()) {
    return {*m.declared_vote_target, "declared earlier today", false};
  }
  if (candidates.size() == 1) return {candidates.front(), "only candidate", false};

  llm::CompletionRequest req;
  req.purpose = llm::Purpose::TargetDecision;
  req.temperature = llm::default_temperature(req.purpose);
  const auto& tpl = kind == DecisionKind::Vote ? ctx.assets.templates.decide_vote : ctx.assets.templates.decide_divine;
  req.prompt_text = fill_template(tpl, {{"AGENT", game::agent_name(m.self)},
                                        {"ROLE", std::string(game::to_string(m.own_role))},
                                        {"HISTORY", decision_history(m)},
                                        {"CANDIDATE", candidate_list(candidates)}});
  req.digest = make_digest(ctx, kind == DecisionKind::Vote ? llm::steps::kDecideVote : llm::steps::kDecideDivine);
  req.digest->candidates = candidates;
  return ask_for_target(ctx, std::move(req), candidates, kind == DecisionKind::Vote ? "vote" : "divine");
}

TargetDecision decide_attack(AgentContext& ctx, const std::vector<AgentId>& candidates) {
  if (candidates.empty()) throw std::invalid_argument("decide_attack needs at least one candidate");
  if (candidates.size() == 1) return {candidates.front(), "only candidate", false};
  const AgentMemory& m = ctx.memory;

  llm::CompletionRequest req;
  req.purpose = llm::Purpose::AttackDecision;
  req.temperature = llm::default_temperature(req.purpose);
  req.max_tokens = 16;
  std::string summary = render_summaries(m.summaries);
  for (const auto& f : known_facts(m)) summary += "- " + f + "\n";
  req.prompt_text = fill_template(ctx.assets.templates.attack, {{"AGENT", game::agent_name(m.self)},
                                                                {"STRATEGY", ctx.assets.attack_strategy},
                                                                {"SUMMARY", summary},
                                                                {"HISTORY", render_history(m.today_talks)},
                                                                {"CANDIDATE", candidate_list(candidates)}});
  req.digest = make_digest(ctx, llm::steps::kAttack);
  req.digest->candidates = candidates;
  return ask_for_target(ctx, std::move(req), candidates, "attack");
}

}  // namespace wolf::agents
