#include "wolf/match/event_log.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "wolf/game/rules.hpp"

namespace wolf::match {

using nlohmann::json;
using game::AgentId;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string dump(const json& j) { return j.dump(-1, ' ', false, json::error_handler_t::replace); }

AgentId agent_at(const json& j, const char* key) {
  AgentId id{j.at(key).get<int>()};
  if (!id.valid()) throw MalformedLog(std::string("bad agent id in \"") + key + "\"");
  return id;
}

Event parse_event(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  const int day = j.at("day").get<int>();
  if (type == "day_start") return DayStartEvent{day};
  if (type == "talk") {
    return TalkEvent{game::TalkEntry{day, j.at("turn").get<int>(), j.at("idx").get<int>(), agent_at(j, "agent"),
                                     j.at("text").get<std::string>()},
                     j.at("final_turn").get<bool>(), j.value("fallback", false)};
  }
  if (type == "vote") {
    return VoteEvent{game::VoteRecord{day, agent_at(j, "agent"), agent_at(j, "target")}, j.value("fallback", false)};
  }
  if (type == "execution") return ExecutionEvent{day, agent_at(j, "agent"), j.value("tie", false)};
  if (type == "attack") {
    return AttackEvent{game::AttackRecord{day, agent_at(j, "agent"), agent_at(j, "target")}, j.value("fallback", false)};
  }
  if (type == "divine") {
    auto result = game::species_from_string(j.at("result").get<std::string>());
    if (!result) throw MalformedLog("bad divination result");
    return DivineEvent{game::DivineRecord{day, agent_at(j, "agent"), agent_at(j, "target"), *result},
                       j.value("fallback", false)};
  }
  if (type == "game_end") {
    auto winner = game::status_from_string(j.at("winner").get<std::string>());
    if (!winner || *winner == game::Status::Ongoing) throw MalformedLog("bad winner");
    return GameEndEvent{day, *winner};
  }
  throw MalformedLog("unknown event type \"" + type + "\"");
}

}  // namespace

int event_day(const Event& e) {
  return std::visit(overloaded{
                        [](const DayStartEvent& x) { return x.day; },
                        [](const TalkEvent& x) { return x.entry.day; },
                        [](const VoteEvent& x) { return x.vote.day; },
                        [](const ExecutionEvent& x) { return x.day; },
                        [](const AttackEvent& x) { return x.attack.day; },
                        [](const DivineEvent& x) { return x.record.day; },
                        [](const GameEndEvent& x) { return x.day; },
                    },
                    e);
}

std::string to_json_line(const MatchHeader& h) {
  json roles = json::array();
  for (auto r : h.roles) roles.push_back(game::to_string(r));
  return dump(json{{"type", "match_start"},
                   {"schema_version", h.schema_version},
                   {"seed", h.seed},
                   {"roles", roles},
                   {"max_talk_turns_per_day", h.max_talk_turns_per_day},
                   {"day0_talk_turns", h.day0_talk_turns}});
}

std::string to_json_line(const LoggedEvent& le) {
  json j = std::visit(
      overloaded{
          [](const DayStartEvent& x) { return json{{"type", "day_start"}, {"day", x.day}}; },
          [](const TalkEvent& x) {
            return json{{"type", "talk"},       {"day", x.entry.day},           {"turn", x.entry.turn},
                        {"idx", x.entry.order_in_turn}, {"agent", x.entry.speaker.value()}, {"text", x.entry.content},
                        {"final_turn", x.final_turn},   {"fallback", x.fallback}};
          },
          [](const VoteEvent& x) {
            return json{{"type", "vote"},
                        {"day", x.vote.day},
                        {"agent", x.vote.voter.value()},
                        {"target", x.vote.target.value()},
                        {"fallback", x.fallback}};
          },
          [](const ExecutionEvent& x) {
            return json{{"type", "execution"}, {"day", x.day}, {"agent", x.target.value()}, {"tie", x.tie}};
          },
          [](const AttackEvent& x) {
            return json{{"type", "attack"},
                        {"day", x.attack.day},
                        {"agent", x.attack.attacker.value()},
                        {"target", x.attack.target.value()},
                        {"fallback", x.fallback}};
          },
          [](const DivineEvent& x) {
            return json{{"type", "divine"},
                        {"day", x.record.day},
                        {"agent", x.record.seer.value()},
                        {"target", x.record.target.value()},
                        {"result", game::to_string(x.record.result)},
                        {"fallback", x.fallback}};
          },
          [](const GameEndEvent& x) {
            return json{{"type", "game_end"}, {"day", x.day}, {"winner", game::to_string(x.winner)}};
          },
      },
      le.event);
  j["seq"] = le.seq;
  return dump(j);
}

std::string to_jsonl(const EventLog& log) {
  std::string out = to_json_line(log.header) + "\n";
  for (const auto& e : log.events) out += to_json_line(e) + "\n";
  return out;
}

EventLog parse_jsonl(std::string_view text) {
  EventLog log;
  std::size_t start = 0;
  int line_no = 0;
  bool have_header = false;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    try {
      json j = json::parse(line);
      if (!have_header) {
        if (j.at("type").get<std::string>() != "match_start") throw MalformedLog("first line must be match_start");
        log.header.schema_version = j.at("schema_version").get<int>();
        if (log.header.schema_version != kSchemaVersion) throw MalformedLog("unsupported schema_version");
        log.header.seed = j.at("seed").get<std::uint64_t>();
        const auto& roles = j.at("roles");
        if (!roles.is_array() || roles.size() != game::kPlayerCount) throw MalformedLog("roles must list 5 roles");
        for (std::size_t i = 0; i < roles.size(); ++i) {
          auto r = game::role_from_string(roles[i].get<std::string>());
          if (!r) throw MalformedLog("unknown role");
          log.header.roles[i] = *r;
        }
        log.header.max_talk_turns_per_day = j.at("max_talk_turns_per_day").get<int>();
        log.header.day0_talk_turns = j.at("day0_talk_turns").get<int>();
        have_header = true;
        continue;
      }
      log.events.push_back(LoggedEvent{j.at("seq").get<std::uint64_t>(), parse_event(j)});
    } catch (const MalformedLog& e) {
      throw MalformedLog("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const json::exception& e) {
      throw MalformedLog("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_header) throw MalformedLog("empty log");
  return log;
}

EventLog read_log_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedLog("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_jsonl(ss.str());
}

game::GameState replay(const EventLog& log) {
  using namespace game;
  GameState s = new_game(log.header.roles, log.header.seed);
  std::vector<VoteRecord> pending_votes;
  auto leave_talk = [&] {
    if (s.phase == Phase::Talk) s = close_talk(std::move(s));
  };
  for (const auto& le : log.events) {
    std::visit(overloaded{
                   [&](const DayStartEvent& x) {
                     if (x.day > 0) s = start_day(std::move(s));
                   },
                   [&](const TalkEvent& x) { s = record_talk(std::move(s), x.entry); },
                   [&](const VoteEvent& x) {
                     leave_talk();
                     pending_votes.push_back(x.vote);
                   },
                   [&](const ExecutionEvent& x) {
                     leave_talk();
                     s = record_votes(std::move(s), pending_votes);
                     pending_votes.clear();
                     s = resolve_elimination(std::move(s), x.target);
                   },
                   [&](const AttackEvent& x) { s = resolve_attack(std::move(s), x.attack.target); },
                   [&](const DivineEvent& x) {
                     leave_talk();
                     s = apply_divination(std::move(s), x.record);
                   },
                   [&](const GameEndEvent& x) {
                     if (s.status != x.winner) throw MalformedLog("game_end winner disagrees with the replayed state");
                   },
               },
               le.event);
  }
  return s;
}

}  // namespace wolf::match
