#include "wolf/agents/agent.hpp"

#include <algorithm>

#include "wolf/agents/policies.hpp"

namespace wolf::agents {

using protocol::MessageKind;

Agent::Agent(std::shared_ptr<const AgentAssets> assets, llm::Backend& backend, AgentOptions options)
    : assets_(std::move(assets)), backend_(backend), options_(options), rng_(options.seed) {
  if (options_.max_talk_turns_per_day < 2) throw std::invalid_argument("max_talk_turns_per_day must be >= 2");
}

AgentContext Agent::context() {
  const int budget = memory_.day == 0 ? options_.day0_talk_turns : options_.max_talk_turns_per_day;
  return AgentContext{*assets_, backend_, memory_, rng_, *persona_, budget, &diagnostics_};
}

void Agent::ingest(const protocol::GameView& view) {
  memory_.alive = view.alive;
  for (const auto& t : view.talk_delta) {
    if (t.day == memory_.day) memory_.today_talks.push_back(t);
  }
  if (view.executed && std::none_of(memory_.executions.begin(), memory_.executions.end(),
                                    [&](const auto& e) { return e.target == *view.executed; })) {
    memory_.executions.push_back({view.day, *view.executed});
  }
  if (view.attacked && std::none_of(memory_.attacks.begin(), memory_.attacks.end(),
                                    [&](const auto& a) { return a.target == *view.attacked; })) {
    // Attacks are announced the next morning.
    memory_.attacks.push_back({view.phase == game::Phase::Night ? view.day : view.day - 1, *view.attacked});
  }
  if (view.divine_result && std::find(memory_.divinations.begin(), memory_.divinations.end(), *view.divine_result) ==
                                memory_.divinations.end()) {
    memory_.divinations.push_back(*view.divine_result);
  }
  memory_.votes = view.vote_history;
}

std::optional<protocol::Reply> Agent::handle(const protocol::Message& message) {
  const auto& view = message.view;
  switch (message.kind) {
    case MessageKind::Initialize:
      memory_ = AgentMemory{};
      memory_.self = view.viewer;
      memory_.own_role = view.viewer_role;
      memory_.day = view.day;
      persona_ = &assets_->persona_for(view.viewer_role);
      rng_.seed(options_.seed);
      diagnostics_.clear();
      ingest(view);
      return std::nullopt;
    case MessageKind::DailyInitialize:
      if (view.day != memory_.day) {
        memory_.day = view.day;
        memory_.today_talks.clear();
      }
      memory_.declared_vote_target.reset();
      memory_.declared_divine_target.reset();
      memory_.strategy_today.reset();
      memory_.talk_requests_today = 0;
      ingest(view);
      return std::nullopt;
    case MessageKind::DailyFinish: {
      ingest(view);
      const bool done = std::any_of(memory_.summaries.begin(), memory_.summaries.end(),
                                    [&](const DaySummary& s) { return s.day == memory_.day; });
      if (!done) {
        auto ctx = context();
        memory_.summaries.push_back(summarize_day(memory_.today_talks, memory_.day, ctx));
      }
      return std::nullopt;
    }
    case MessageKind::Finish:
      ingest(view);
      return std::nullopt;
    case MessageKind::Talk:
      ingest(view);
      return protocol::Reply{MessageKind::Talk, memory_.self, talk(), std::nullopt};
    case MessageKind::Vote:
      ingest(view);
      return protocol::Reply{MessageKind::Vote, memory_.self, {}, vote()};
    case MessageKind::Divine:
      ingest(view);
      return protocol::Reply{MessageKind::Divine, memory_.self, {}, divine_target()};
    case MessageKind::Attack:
      ingest(view);
      return protocol::Reply{MessageKind::Attack, memory_.self, {}, attack_target()};
  }
  return std::nullopt;
}

std::string Agent::talk() {
  const int turn = memory_.talk_requests_today++;
  auto ctx = context();
  if (memory_.day == 0) {
    if (turn > 0) return std::string(game::kOver);
    try {
      return greet(ctx);
    } catch (const llm::BackendFailure& e) {
      ctx.note(std::string("greeting failed: ") + e.what());
      return std::string(game::kSkip);
    }
  }
  if (turn >= ctx.turn_budget - 1) {
    if (memory_.declared_vote_target) return std::string(game::kOver);
    return declare_vote(ctx);
  }
  try {
    switch (memory_.own_role) {
      case game::Role::Villager: return villager_generate(ctx, turn);
      case game::Role::Seer: return seer_generate(ctx, turn);
      case game::Role::Werewolf: return werewolf_generate(ctx, turn);
      case game::Role::Possessed: return possessed_generate(ctx, memory_.day, turn);
    }
  } catch (const llm::BackendFailure& e) {
    ctx.note("talk on day " + std::to_string(memory_.day) + " failed: " + e.what());
  }
  return std::string(game::kSkip);
}

AgentId Agent::vote() {
  auto ctx = context();
  const auto candidates = memory_.others_alive();
  if (memory_.own_role == game::Role::Possessed && memory_.day <= 1 && memory_.inferred_seer &&
      !memory_.declared_vote_target &&
      std::find(candidates.begin(), candidates.end(), *memory_.inferred_seer) != candidates.end()) {
    return *memory_.inferred_seer;
  }
  return decide_target(DecisionKind::Vote, ctx, candidates).target;
}

AgentId Agent::divine_target() {
  auto ctx = context();
  const auto candidates = memory_.others_alive();
  if (memory_.declared_divine_target &&
      std::find(candidates.begin(), candidates.end(), *memory_.declared_divine_target) != candidates.end()) {
    return *memory_.declared_divine_target;
  }
  std::vector<AgentId> fresh;
  for (AgentId id : candidates) {
    if (std::none_of(memory_.divinations.begin(), memory_.divinations.end(),
                     [&](const auto& d) { return d.target == id; })) {
      fresh.push_back(id);
    }
  }
  return decide_target(DecisionKind::Divine, ctx, fresh.empty() ? candidates : fresh).target;
}

AgentId Agent::attack_target() {
  auto ctx = context();
  // The werewolf is never a candidate; the orchestrator validates anyway.
  return decide_attack(ctx, memory_.others_alive()).target;
}

}  // namespace wolf::agents
