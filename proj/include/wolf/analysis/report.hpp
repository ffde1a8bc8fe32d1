#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "wolf/analysis/consistency.hpp"
#include "wolf/match/event_log.hpp"

namespace wolf::analysis {

struct GameSummary {
  std::uint64_t seed = 0;
  game::Status winner = game::Status::Ongoing;  // Ongoing: log ended early
  int last_day = 0;
  game::RoleAssignment roles{};
  std::array<bool, game::kPlayerCount> survived{};  // by agent slot
  int fallbacks = 0;  // requests answered by the orchestrator's fallback policy
  std::string log_file;
  ConsistencyReport consistency;
};

GameSummary summarize_game(const match::EventLog& log, std::string log_file = {});

struct MatchReport {
  std::vector<GameSummary> games;

  int total_violations() const;
  nlohmann::json to_json() const;
  /// Fixed-width table, one row per game plus totals.
  std::string to_text() const;
};

}  // namespace wolf::analysis
