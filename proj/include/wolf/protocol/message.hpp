#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wolf/game/types.hpp"

// Newline-delimited JSON between the orchestrator and agent clients.
// See PROTOCOL.md for the line format.
namespace wolf::protocol {

using game::AgentId;

enum class MessageKind { Initialize, DailyInitialize, Talk, Vote, Divine, Attack, DailyFinish, Finish };

std::string_view to_string(MessageKind k);
std::optional<MessageKind> kind_from_string(std::string_view s);

/// What one agent is allowed to know at a point in the game.
struct GameView {
  AgentId viewer;
  int day = 0;
  game::Phase phase = game::Phase::Talk;
  std::vector<AgentId> alive;
  game::Role viewer_role = game::Role::Villager;
  std::vector<game::TalkEntry> talk_delta;
  std::optional<AgentId> executed;
  std::optional<AgentId> attacked;
  std::optional<game::DivineRecord> divine_result;
  std::vector<game::VoteRecord> vote_history;

  bool operator==(const GameView&) const = default;
};

struct Message {
  MessageKind kind = MessageKind::Initialize;
  GameView view;

  // TALK, VOTE, DIVINE and ATTACK are requests; everything else is a notification.
  bool response_expected() const;

  bool operator==(const Message&) const = default;
};

/// Agent -> orchestrator. TALK replies carry `text`; VOTE/DIVINE/ATTACK carry `target`.
struct Reply {
  MessageKind kind = MessageKind::Talk;
  AgentId agent;
  std::string text;
  std::optional<AgentId> target;

  bool operator==(const Reply&) const = default;
};

class MalformedMessage : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Single line, no trailing newline. Keys are emitted in sorted order so the
/// encoding of a message is canonical.
std::string encode(const Message& message);
Message decode(std::string_view line);

std::string encode(const Reply& reply);
Reply decode_reply(std::string_view line);

/// Projection of the authoritative state onto what `viewer` may see. Talk
/// entries before `talk_cursor` are omitted (the viewer has already seen them).
GameView filter_view(const game::GameState& state, AgentId viewer, std::size_t talk_cursor = 0);

}  // namespace wolf::protocol
