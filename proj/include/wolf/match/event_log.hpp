#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wolf/game/types.hpp"

// JSONL record of one match. Line 1 is the header; every following line is
// one event. The schema is documented in README.md.
namespace wolf::match {

inline constexpr int kSchemaVersion = 1;

struct MatchHeader {
  int schema_version = kSchemaVersion;
  std::uint64_t seed = 0;
  game::RoleAssignment roles{};
  int max_talk_turns_per_day = 10;
  int day0_talk_turns = 3;
  bool operator==(const MatchHeader&) const = default;
};

struct DayStartEvent {
  int day = 0;
  bool operator==(const DayStartEvent&) const = default;
};

struct TalkEvent {
  game::TalkEntry entry;
  bool final_turn = false;  // the day's reserved vote-declaration turn
  bool fallback = false;    // agent failed to answer; recorded as Skip
  bool operator==(const TalkEvent&) const = default;
};

struct VoteEvent {
  game::VoteRecord vote;
  bool fallback = false;
  bool operator==(const VoteEvent&) const = default;
};

struct ExecutionEvent {
  int day = 0;
  game::AgentId target;
  bool tie = false;  // chosen by tie-break
  bool operator==(const ExecutionEvent&) const = default;
};

struct AttackEvent {
  game::AttackRecord attack;
  bool fallback = false;
  bool operator==(const AttackEvent&) const = default;
};

struct DivineEvent {
  game::DivineRecord record;
  bool fallback = false;
  bool operator==(const DivineEvent&) const = default;
};

struct GameEndEvent {
  int day = 0;
  game::Status winner = game::Status::Ongoing;
  bool operator==(const GameEndEvent&) const = default;
};

using Event = std::variant<DayStartEvent, TalkEvent, VoteEvent, ExecutionEvent, AttackEvent, DivineEvent, GameEndEvent>;

struct LoggedEvent {
  std::uint64_t seq = 0;  // logical timestamp, strictly increasing
  Event event;
  bool operator==(const LoggedEvent&) const = default;
};

struct EventLog {
  MatchHeader header;
  std::vector<LoggedEvent> events;
  bool operator==(const EventLog&) const = default;
};

class MalformedLog : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int event_day(const Event& e);

std::string to_json_line(const MatchHeader& header);
std::string to_json_line(const LoggedEvent& event);
std::string to_jsonl(const EventLog& log);

/// Strict parser; the error message names the offending 1-based line.
EventLog parse_jsonl(std::string_view text);
EventLog read_log_file(const std::string& path);

/// Re-applies the log through the game rules from a fresh state.
game::GameState replay(const EventLog& log);

}  // namespace wolf::match
