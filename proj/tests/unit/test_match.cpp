#include <gtest/gtest.h>

#include "json.hpp"

#include <sys/socket.h>
#include <unistd.h>

#include <map>
#include <set>
#include <thread>

#include "support.hpp"
#include "wolf/agents/agent.hpp"
#include "wolf/match/selfplay.hpp"

using namespace wolf;
using namespace wolf::match;
using game::AgentId;

namespace {

std::shared_ptr<const agents::AgentAssets> assets() {
  static auto a = std::make_shared<const agents::AgentAssets>(agents::load_assets(agents::default_asset_dir()));
  return a;
}

SelfPlayResult play(std::uint64_t seed, Transport t = Transport::InProcess) {
  SelfPlayOptions o;
  o.seed = seed;
  o.assets = assets();
  o.transport = t;
  return self_play(o);
}

template <class T>
std::vector<const T*> all_of(const EventLog& log) {
  std::vector<const T*> out;
  for (const auto& e : log.events) {
    if (auto* p = std::get_if<T>(&e.event)) out.push_back(p);
  }
  return out;
}

// Endpoint that answers every request with the same line.
struct ConstantEndpoint : AgentEndpoint {
  explicit ConstantEndpoint(std::string line) : line(std::move(line)) {}
  std::optional<std::string> exchange(std::string_view, bool expect, std::chrono::milliseconds) override {
    if (!expect) return std::nullopt;
    return line;
  }
  std::string line;
};

}  // namespace

TEST(Match, ScriptedSeedSevenEndsByDayTwo) {
  const auto r = play(7);
  const auto ends = all_of<GameEndEvent>(r.match.log);
  ASSERT_EQ(ends.size(), 1u);
  EXPECT_LE(ends[0]->day, 2);
  EXPECT_TRUE(r.match.final_state.finished());
}

TEST(Match, StructuralPropertiesOverSeeds) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    SCOPED_TRACE("seed " + std::to_string(seed));
    const auto r = play(seed);
    const auto& log = r.match.log;

    // Day 0 is talk plus one divination.
    for (const auto& e : log.events) {
      if (event_day(e.event) != 0) continue;
      EXPECT_FALSE(std::holds_alternative<VoteEvent>(e.event));
      EXPECT_FALSE(std::holds_alternative<AttackEvent>(e.event));
      EXPECT_FALSE(std::holds_alternative<ExecutionEvent>(e.event));
    }
    int day0_divines = 0;
    for (auto* d : all_of<DivineEvent>(log)) day0_divines += d->record.day == 0;
    EXPECT_EQ(day0_divines, 1);

    // Strictly increasing logical timestamps.
    for (std::size_t i = 1; i < log.events.size(); ++i) EXPECT_LT(log.events[i - 1].seq, log.events[i].seq);

    // Replay and serialization.
    EXPECT_EQ(replay(log), r.match.final_state);
    EXPECT_EQ(parse_jsonl(to_jsonl(log)), log);

    // Human win iff the werewolf is gone.
    const AgentId wolf = game::werewolf_of(log.header.roles);
    EXPECT_EQ(r.match.final_state.status == game::Status::HumanWin, !r.match.final_state.alive.contains(wolf));

    // Per turn: every alive agent that has not said Over speaks exactly once.
    game::AliveSet alive = game::AliveSet::everyone();
    std::map<std::pair<int, int>, std::vector<AgentId>> turns;
    std::map<int, game::AliveSet> done;
    std::map<int, game::AliveSet> alive_on;
    std::map<int, int> votes_per_day;
    std::map<int, int> alive_at_vote;
    for (const auto& e : log.events) {
      if (auto* d = std::get_if<DayStartEvent>(&e.event)) alive_on[d->day] = alive;
      if (auto* t = std::get_if<TalkEvent>(&e.event)) {
        EXPECT_TRUE(alive.contains(t->entry.speaker));
        turns[{t->entry.day, t->entry.turn}].push_back(t->entry.speaker);
      }
      if (auto* v = std::get_if<VoteEvent>(&e.event)) {
        EXPECT_TRUE(alive.contains(v->vote.voter));
        EXPECT_TRUE(alive.contains(v->vote.target));
        EXPECT_NE(v->vote.voter, v->vote.target);
        ++votes_per_day[v->vote.day];
        alive_at_vote[v->vote.day] = alive.size();
      }
      if (auto* x = std::get_if<ExecutionEvent>(&e.event)) alive.erase(x->target);
      if (auto* a = std::get_if<AttackEvent>(&e.event)) alive.erase(a->attack.target);
    }
    for (const auto& [day, n] : votes_per_day) EXPECT_EQ(n, alive_at_vote[day]);
    std::map<int, game::AliveSet> over;
    for (const auto& [key, speakers] : turns) {
      const auto [day, turn] = key;
      std::vector<AgentId> expected;
      for (AgentId id : alive_on[day].members()) {
        if (!over[day].contains(id)) expected.push_back(id);
      }
      auto got = speakers;
      std::sort(got.begin(), got.end());
      EXPECT_EQ(got, expected) << "day " << day << " turn " << turn;
      for (const auto& e : log.events) {
        auto* t = std::get_if<TalkEvent>(&e.event);
        if (t && t->entry.day == day && t->entry.turn == turn && t->entry.is_over()) over[day].insert(t->entry.speaker);
      }
    }
  }
}

TEST(Match, NoRequestsToEliminatedAgents) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::vector<std::pair<AgentId, std::string>> sent;
    SelfPlayOptions o;
    o.seed = seed;
    o.assets = assets();
    o.on_send = [&](AgentId to, const std::string& line) { sent.emplace_back(to, line); };
    const auto r = self_play(o);
    for (const auto& [to, line] : sent) {
      const auto m = protocol::decode(line);
      EXPECT_EQ(m.view.viewer, to);
      if (m.kind == protocol::MessageKind::Talk || m.kind == protocol::MessageKind::Vote ||
          m.kind == protocol::MessageKind::Divine || m.kind == protocol::MessageKind::Attack) {
        EXPECT_NE(std::find(m.view.alive.begin(), m.view.alive.end(), to), m.view.alive.end()) << line;
      }
      EXPECT_EQ(testkit::leakage(line, r.match.final_state), "") << line;
    }
  }
}

TEST(Match, SpeakingOrderIsRandomButReproducible) {
  std::set<std::vector<int>> first_turn_orders;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::vector<int> order;
    for (auto* t : all_of<TalkEvent>(play(seed).match.log)) {
      if (t->entry.day == 1 && t->entry.turn == 0) order.push_back(t->entry.speaker.value());
    }
    first_turn_orders.insert(order);
  }
  EXPECT_GT(first_turn_orders.size(), 10u);
  EXPECT_EQ(to_jsonl(play(11).match.log), to_jsonl(play(11).match.log));
}

TEST(Match, SocketTransportMatchesInProcess) {
  for (std::uint64_t seed : {3ull, 42ull}) {
    EXPECT_EQ(to_jsonl(play(seed, Transport::Socket).match.log), to_jsonl(play(seed).match.log));
  }
}

TEST(Match, InvalidRepliesFallBack) {
  MatchConfig cfg;
  cfg.seed = 5;
  for (auto& e : cfg.endpoints) e = std::make_shared<ConstantEndpoint>("garbage");
  const auto r = run_match(cfg);
  EXPECT_TRUE(r.final_state.finished());
  EXPECT_EQ(replay(r.log), r.final_state);
  for (auto* t : all_of<TalkEvent>(r.log)) {
    EXPECT_EQ(t->entry.content, "Skip");
    EXPECT_TRUE(t->fallback);
  }
  for (auto* v : all_of<VoteEvent>(r.log)) EXPECT_TRUE(v->fallback);
  // Skip is not Over, so every day runs its full budget.
  int day1 = 0;
  for (auto* t : all_of<TalkEvent>(r.log)) day1 += t->entry.day == 1 && t->entry.speaker == AgentId{1};
  EXPECT_EQ(day1, cfg.max_talk_turns_per_day);
}

TEST(Match, WrongAgentOrKindInReplyIsRejected) {
  MatchConfig cfg;
  cfg.seed = 9;
  // Well-formed, but claims to come from agent 5 and always votes for agent 1.
  const std::string foreign = protocol::encode(protocol::Reply{protocol::MessageKind::Vote, AgentId{5}, {}, AgentId{1}});
  for (auto& e : cfg.endpoints) e = std::make_shared<ConstantEndpoint>(foreign);
  const auto r = run_match(cfg);
  for (auto* v : all_of<VoteEvent>(r.log)) {
    if (v->vote.day == 1) EXPECT_EQ(v->fallback, v->vote.voter != AgentId{5});
  }
}

TEST(Match, SilentSocketAgentTimesOut) {
  int fds[2];
  ASSERT_EQ(::socketpair(AF_UNIX, SOCK_STREAM, 0, fds), 0);
  // Reads everything, answers nothing.
  std::thread sink([fd = fds[1]] {
    char buf[4096];
    while (::read(fd, buf, sizeof buf) > 0) {
    }
    ::close(fd);
  });

  llm::ScriptedBackend backend(1);
  std::vector<std::unique_ptr<agents::Agent>> players;
  MatchConfig cfg;
  cfg.seed = 1;
  cfg.timeout_per_request = std::chrono::milliseconds{5};
  cfg.endpoints[0] = std::make_shared<SocketEndpoint>(fds[0]);
  for (int i = 1; i < 5; ++i) {
    players.push_back(std::make_unique<agents::Agent>(assets(), backend, agents::AgentOptions{std::uint64_t(i)}));
    cfg.endpoints[static_cast<std::size_t>(i)] = std::make_shared<InProcessEndpoint>(*players.back());
  }
  const auto r = run_match(cfg);
  cfg.endpoints = {};
  sink.join();
  EXPECT_TRUE(r.final_state.finished());
  for (auto* t : all_of<TalkEvent>(r.log)) EXPECT_EQ(t->fallback, t->entry.speaker == AgentId{1});
}

TEST(Match, ConfigValidation) {
  MatchConfig cfg;
  for (auto& e : cfg.endpoints) e = std::make_shared<ConstantEndpoint>("x");
  cfg.max_talk_turns_per_day = 1;
  EXPECT_THROW(Orchestrator{cfg}, std::invalid_argument);
  cfg.max_talk_turns_per_day = 2;
  cfg.endpoints[3] = nullptr;
  EXPECT_THROW(Orchestrator{cfg}, std::invalid_argument);
}

TEST(EventLog, MalformedLinesNameTheLine) {
  const std::string good = to_jsonl(play(1).match.log);
  try {
    parse_jsonl(good + "{\"type\":\"talk\"}\n");
    FAIL();
  } catch (const MalformedLog& e) {
    const auto lines = std::count(good.begin(), good.end(), '\n');
    EXPECT_NE(std::string(e.what()).find("line " + std::to_string(lines + 1)), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_jsonl(""), MalformedLog);
  EXPECT_THROW(parse_jsonl("{\"type\":\"day_start\",\"day\":0,\"seq\":1}\n"), MalformedLog);
  std::string wrong_version = good;
  wrong_version.replace(wrong_version.find("\"schema_version\":1"), 18, "\"schema_version\":9");
  EXPECT_THROW(parse_jsonl(wrong_version), MalformedLog);
}

TEST(EventLog, HeaderCarriesSchemaVersion) {
  const std::string text = to_jsonl(play(2).match.log);
  const auto first = nlohmann::json::parse(text.substr(0, text.find('\n')));
  EXPECT_EQ(first["schema_version"], kSchemaVersion);
  EXPECT_EQ(first["type"], "match_start");
}
