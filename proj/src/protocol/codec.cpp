#include <array>
#include <utility>

#include "json.hpp"
#include "wolf/protocol/message.hpp"

namespace wolf::protocol {

using json = nlohmann::json;
using game::AgentId;

namespace {

constexpr std::array<std::pair<MessageKind, std::string_view>, 8> kKindNames{{
    {MessageKind::Initialize, "INITIALIZE"},
    {MessageKind::DailyInitialize, "DAILY_INITIALIZE"},
    {MessageKind::Talk, "TALK"},
    {MessageKind::Vote, "VOTE"},
    {MessageKind::Divine, "DIVINE"},
    {MessageKind::Attack, "ATTACK"},
    {MessageKind::DailyFinish, "DAILY_FINISH"},
    {MessageKind::Finish, "FINISH"},
}};

[[noreturn]] void malformed(const std::string& why) { throw MalformedMessage(why); }

const json& field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) malformed(std::string("missing field \"") + key + "\"");
  return *it;
}

int int_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_number_integer()) malformed(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

AgentId agent_field(const json& obj, const char* key) {
  AgentId id{int_field(obj, key)};
  if (!id.valid()) malformed(std::string("field \"") + key + "\" is not an agent id");
  return id;
}

std::string string_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_string()) malformed(std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

std::optional<AgentId> optional_agent(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (v.is_null()) return std::nullopt;
  return agent_field(obj, key);
}

const json& array_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_array()) malformed(std::string("field \"") + key + "\" must be an array");
  return v;
}

json parse_object(std::string_view line) {
  if (line.find('\n') != std::string_view::npos) malformed("embedded newline");
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded()) malformed("invalid JSON");
  if (!j.is_object()) malformed("message is not a JSON object");
  return j;
}

std::string dump(const json& j) { return j.dump(-1, ' ', false, json::error_handler_t::replace); }

json talk_to_json(const game::TalkEntry& t) {
  return json{{"day", t.day}, {"turn", t.turn}, {"idx", t.order_in_turn}, {"agent", t.speaker.value()}, {"text", t.content}};
}

json vote_to_json(const game::VoteRecord& v) {
  return json{{"day", v.day}, {"agent", v.voter.value()}, {"target", v.target.value()}};
}

json divine_to_json(const game::DivineRecord& d) {
  return json{{"day", d.day}, {"agent", d.seer.value()}, {"target", d.target.value()}, {"result", game::to_string(d.result)}};
}

}  // namespace

std::string_view to_string(MessageKind k) {
  for (const auto& [kind, name] : kKindNames) {
    if (kind == k) return name;
  }
  return "INITIALIZE";
}

std::optional<MessageKind> kind_from_string(std::string_view s) {
  for (const auto& [kind, name] : kKindNames) {
    if (name == s) return kind;
  }
  return std::nullopt;
}

bool Message::response_expected() const {
  return kind == MessageKind::Talk || kind == MessageKind::Vote || kind == MessageKind::Divine ||
         kind == MessageKind::Attack;
}

std::string encode(const Message& m) {
  const GameView& v = m.view;
  json alive = json::array();
  for (AgentId id : v.alive) alive.push_back(id.value());
  json talk = json::array();
  for (const auto& t : v.talk_delta) talk.push_back(talk_to_json(t));
  json votes = json::array();
  for (const auto& vr : v.vote_history) votes.push_back(vote_to_json(vr));

  json j{
      {"kind", to_string(m.kind)},
      {"day", v.day},
      {"phase", game::to_string(v.phase)},
      {"agent", v.viewer.value()},
      {"role", game::to_string(v.viewer_role)},
      {"alive", std::move(alive)},
      {"talk", std::move(talk)},
      {"executed", v.executed ? json(v.executed->value()) : json(nullptr)},
      {"attacked", v.attacked ? json(v.attacked->value()) : json(nullptr)},
      {"divine", v.divine_result ? divine_to_json(*v.divine_result) : json(nullptr)},
      {"votes", std::move(votes)},
  };
  return dump(j);
}

Message decode(std::string_view line) {
  const json j = parse_object(line);
  Message m;
  auto kind = kind_from_string(string_field(j, "kind"));
  if (!kind) malformed("unknown kind");
  m.kind = *kind;

  GameView& v = m.view;
  v.day = int_field(j, "day");
  auto phase = game::phase_from_string(string_field(j, "phase"));
  if (!phase) malformed("unknown phase");
  v.phase = *phase;
  v.viewer = agent_field(j, "agent");
  auto role = game::role_from_string(string_field(j, "role"));
  if (!role) malformed("unknown role");
  v.viewer_role = *role;

  for (const auto& a : array_field(j, "alive")) {
    if (!a.is_number_integer() || !AgentId{a.get<int>()}.valid()) malformed("bad alive entry");
    v.alive.emplace_back(a.get<int>());
  }
  for (const auto& t : array_field(j, "talk")) {
    if (!t.is_object()) malformed("bad talk entry");
    v.talk_delta.push_back(game::TalkEntry{int_field(t, "day"), int_field(t, "turn"), int_field(t, "idx"),
                                           agent_field(t, "agent"), string_field(t, "text")});
  }
  v.executed = optional_agent(j, "executed");
  v.attacked = optional_agent(j, "attacked");
  const json& d = field(j, "divine");
  if (!d.is_null()) {
    if (!d.is_object()) malformed("bad divine entry");
    auto result = game::species_from_string(string_field(d, "result"));
    if (!result) malformed("bad divination result");
    v.divine_result = game::DivineRecord{int_field(d, "day"), agent_field(d, "agent"), agent_field(d, "target"), *result};
  }
  for (const auto& vr : array_field(j, "votes")) {
    if (!vr.is_object()) malformed("bad vote entry");
    v.vote_history.push_back(game::VoteRecord{int_field(vr, "day"), agent_field(vr, "agent"), agent_field(vr, "target")});
  }
  return m;
}

std::string encode(const Reply& r) {
  json j{{"kind", to_string(r.kind)}, {"agent", r.agent.value()}};
  if (r.kind == MessageKind::Talk) {
    j["text"] = r.text;
  } else {
    j["target"] = r.target ? json(r.target->value()) : json(nullptr);
  }
  return dump(j);
}

Reply decode_reply(std::string_view line) {
  const json j = parse_object(line);
  Reply r;
  auto kind = kind_from_string(string_field(j, "kind"));
  if (!kind) malformed("unknown kind");
  r.kind = *kind;
  r.agent = agent_field(j, "agent");
  if (r.kind == MessageKind::Talk) {
    r.text = string_field(j, "text");
  } else if (r.kind == MessageKind::Vote || r.kind == MessageKind::Divine || r.kind == MessageKind::Attack) {
    r.target = optional_agent(j, "target");
    if (!r.target) malformed("reply carries no target");
  } else {
    malformed("notification kinds have no reply");
  }
  return r;
}

}  // namespace wolf::protocol
