#include "wolf/match/orchestrator.hpp"

#include <algorithm>

namespace wolf::match {

using game::Phase;
using protocol::MessageKind;

Orchestrator::Orchestrator(MatchConfig config) : config_(std::move(config)), rng_(config_.seed) {
  for (const auto& e : config_.endpoints) {
    if (!e) throw std::invalid_argument("every agent needs an endpoint");
  }
  if (config_.max_talk_turns_per_day < 2) throw std::invalid_argument("max_talk_turns_per_day must be >= 2");
  if (config_.day0_talk_turns < 1) throw std::invalid_argument("day0_talk_turns must be >= 1");
}

void Orchestrator::emit(Event e) { log_.events.push_back(LoggedEvent{++seq_, std::move(e)}); }

AgentId Orchestrator::random_of(const std::vector<AgentId>& ids) {
  std::uniform_int_distribution<std::size_t> dist(0, ids.size() - 1);
  return ids[dist(rng_)];
}

std::optional<protocol::Reply> Orchestrator::send(AgentId to, MessageKind kind) {
  protocol::Message message{kind, protocol::filter_view(state_, to, cursor_[to.slot()])};
  cursor_[to.slot()] = state_.talks.size();
  const std::string line = protocol::encode(message);
  if (config_.on_send) config_.on_send(to, line);
  const bool expect = message.response_expected();
  std::optional<std::string> raw;
  try {
    raw = config_.endpoints[to.slot()]->exchange(line, expect, config_.timeout_per_request);
  } catch (const AgentUnresponsive&) {
    return std::nullopt;
  }
  if (!expect || !raw) return std::nullopt;
  try {
    auto reply = protocol::decode_reply(*raw);
    if (reply.kind != kind || reply.agent != to) return std::nullopt;
    return reply;
  } catch (const protocol::MalformedMessage&) {
    return std::nullopt;
  }
}

void Orchestrator::broadcast(MessageKind kind, bool alive_only) {
  for (AgentId id : game::all_agents()) {
    if (!alive_only || state_.alive.contains(id)) send(id, kind);
  }
}

void Orchestrator::begin() {
  const auto roles = game::assign_roles(rng_);
  state_ = game::new_game(roles, config_.seed);
  log_ = EventLog{};
  log_.header = MatchHeader{kSchemaVersion, config_.seed, roles, config_.max_talk_turns_per_day,
                            config_.day0_talk_turns};
  cursor_.fill(0);
  seq_ = 0;
  broadcast(MessageKind::Initialize, false);
}

void Orchestrator::open_day() {
  if (state_.day > 0 || state_.phase != Phase::Talk) state_ = game::start_day(std::move(state_));
  emit(DayStartEvent{state_.day});
  broadcast(MessageKind::DailyInitialize, true);
}

void Orchestrator::talk_phase(int budget) {
  game::AliveSet done;  // agents that said Over today
  for (int turn = 0; turn < budget; ++turn) {
    std::vector<AgentId> speakers;
    for (AgentId id : state_.alive.members()) {
      if (!done.contains(id)) speakers.push_back(id);
    }
    if (speakers.empty()) break;
    std::shuffle(speakers.begin(), speakers.end(), rng_);
    const bool final_turn = state_.day >= 1 && turn == budget - 1;
    for (std::size_t i = 0; i < speakers.size(); ++i) {
      const AgentId who = speakers[i];
      auto reply = send(who, MessageKind::Talk);
      const bool fallback = !reply || reply->text.empty();
      std::string text = fallback ? std::string(game::kSkip) : reply->text;
      // One line per utterance on the wire and in the log.
      std::replace(text.begin(), text.end(), '\n', ' ');
      game::TalkEntry entry{state_.day, turn, static_cast<int>(i), who, std::move(text)};
      if (entry.is_over()) done.insert(who);
      state_ = game::record_talk(std::move(state_), entry);
      emit(TalkEvent{std::move(entry), final_turn, fallback});
    }
  }
  state_ = game::close_talk(std::move(state_));
}

void Orchestrator::vote_phase() {
  std::vector<game::VoteRecord> votes;
  for (AgentId voter : state_.alive.members()) {
    auto reply = send(voter, MessageKind::Vote);
    const auto valid = game::vote_candidates(state_, voter);
    bool fallback = !reply || !reply->target || std::find(valid.begin(), valid.end(), *reply->target) == valid.end();
    const AgentId target = fallback ? random_of(valid) : *reply->target;
    votes.push_back({state_.day, voter, target});
    emit(VoteEvent{votes.back(), fallback});
  }
  std::array<int, game::kPlayerCount> counts{};
  for (const auto& v : votes) ++counts[v.target.slot()];
  const int top = *std::max_element(counts.begin(), counts.end());
  const bool tie = std::count(counts.begin(), counts.end(), top) > 1;

  const AgentId executed = game::tally_votes(votes, state_.alive, rng_);
  state_ = game::record_votes(std::move(state_), votes);
  state_ = game::resolve_elimination(std::move(state_), executed);
  emit(ExecutionEvent{state_.day, executed, tie});
}

void Orchestrator::night_phase() {
  if (state_.finished()) return;
  broadcast(MessageKind::DailyFinish, true);
  if (state_.day >= 1) {
    if (const auto wolf = game::alive_werewolf(state_)) {
      auto reply = send(*wolf, MessageKind::Attack);
      const auto valid = game::attack_candidates(state_);
      const bool fallback =
          !reply || !reply->target || std::find(valid.begin(), valid.end(), *reply->target) == valid.end();
      const AgentId target = fallback ? random_of(valid) : *reply->target;
      state_ = game::resolve_attack(std::move(state_), target);
      emit(AttackEvent{state_.attacks.back(), fallback});
      if (state_.finished()) return;
    }
  }
  if (const auto seer = game::alive_seer(state_)) {
    auto reply = send(*seer, MessageKind::Divine);
    const auto valid = game::divine_candidates(state_);
    const bool fallback =
        !reply || !reply->target || std::find(valid.begin(), valid.end(), *reply->target) == valid.end();
    const AgentId target = fallback ? random_of(valid) : *reply->target;
    const auto record = game::divine(state_, target);
    state_ = game::apply_divination(std::move(state_), record);
    emit(DivineEvent{record, fallback});
  }
}

void Orchestrator::finish() {
  emit(GameEndEvent{state_.day, state_.status});
  broadcast(MessageKind::Finish, false);
}

MatchResult Orchestrator::run() {
  begin();
  open_day();
  talk_phase(config_.day0_talk_turns);
  night_phase();
  while (!state_.finished()) {
    open_day();
    talk_phase(config_.max_talk_turns_per_day);
    vote_phase();
    night_phase();
  }
  finish();
  return MatchResult{log_, state_};
}

MatchResult run_match(MatchConfig config) { return Orchestrator(std::move(config)).run(); }

}  // namespace wolf::match
