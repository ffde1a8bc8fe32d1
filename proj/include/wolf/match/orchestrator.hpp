#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wolf/game/rules.hpp"
#include "wolf/match/endpoint.hpp"
#include "wolf/match/event_log.hpp"
#include "wolf/protocol/message.hpp"

namespace wolf::match {

using game::AgentId;

struct MatchConfig {
  std::uint64_t seed = 0;
  int max_talk_turns_per_day = 10;
  int day0_talk_turns = 3;
  std::array<std::shared_ptr<AgentEndpoint>, game::kPlayerCount> endpoints{};
  std::chrono::milliseconds timeout_per_request{120000};
  /// Sees every line sent to an agent, before it is sent.
  std::function<void(AgentId, const std::string&)> on_send;
};

struct MatchResult {
  EventLog log;
  game::GameState final_state;
};

/// Drives one match. The phases are public so tests can step through a day.
class Orchestrator {
 public:
  explicit Orchestrator(MatchConfig config);

  /// INITIALIZE to everyone and role assignment.
  void begin();
  /// DAY_START and DAILY_INITIALIZE for the current day.
  void open_day();
  /// Up to `budget` turns. On days >= 1 the last turn is flagged as the final turn.
  void talk_phase(int budget);
  /// Collects votes, tallies, executes.
  void vote_phase();
  /// Attack (days >= 1) then divination, while the game is still ongoing.
  void night_phase();
  /// GAME_END and FINISH to everyone.
  void finish();

  MatchResult run();

  const game::GameState& state() const { return state_; }
  const EventLog& log() const { return log_; }

 private:
  std::optional<protocol::Reply> send(AgentId to, protocol::MessageKind kind);
  void broadcast(protocol::MessageKind kind, bool alive_only);
  void emit(Event e);
  AgentId random_of(const std::vector<AgentId>& ids);

  MatchConfig config_;
  game::Rng rng_;
  game::GameState state_;
  EventLog log_;
  std::array<std::size_t, game::kPlayerCount> cursor_{};
  std::uint64_t seq_ = 0;
};

MatchResult run_match(MatchConfig config);

}  // namespace wolf::match
