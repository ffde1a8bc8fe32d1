#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "wolf/agents/agent.hpp"
#include "wolf/agents/grammar.hpp"
#include "wolf/agents/policies.hpp"
#include "wolf/agents/prompt.hpp"
#include "wolf/llm/steps.hpp"
#include "wolf/match/event_log.hpp"

using namespace wolf;
using namespace wolf::agents;
using game::AgentId;
using game::Role;

namespace {

const AgentAssets& assets() {
  static const AgentAssets a = load_assets(default_asset_dir());
  return a;
}

struct FixedBackend : llm::Backend {
  explicit FixedBackend(std::string text) : text(std::move(text)) {}
  std::string complete(const llm::CompletionRequest& r) override {
    requests.push_back(r);
    return text;
  }
  std::string text;
  std::vector<llm::CompletionRequest> requests;
};

struct FailingBackend : llm::Backend {
  std::string complete(const llm::CompletionRequest&) override {
    ++calls;
    throw llm::BackendFailure("down");
  }
  int calls = 0;
};

// Owns what an AgentContext points at.
struct Harness {
  Harness(Role role, AgentId self, llm::Backend& b) : backend(b), rng(7) {
    memory.self = self;
    memory.own_role = role;
    memory.day = 1;
    memory.alive = {AgentId{1}, AgentId{2}, AgentId{3}, AgentId{4}, AgentId{5}};
  }
  AgentContext ctx() { return AgentContext{assets(), backend, memory, rng, assets().persona_for(memory.own_role), 10, &notes}; }

  llm::Backend& backend;
  AgentMemory memory;
  game::Rng rng;
  std::vector<std::string> notes;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t tokens(const std::string& s) {
  std::istringstream in(s);
  std::size_t n = 0;
  for (std::string w; in >> w;) ++n;
  return n;
}

}  // namespace

TEST(Assets, PersonasHaveThreeToFiveItems) {
  for (const auto& p : assets().personas) {
    EXPECT_GE(p.profile.size(), 3u);
    EXPECT_LE(p.profile.size(), 5u);
    EXPECT_GE(p.examples.size(), 3u);
    EXPECT_LE(p.examples.size(), 5u);
  }
  for (Role r : {Role::Villager, Role::Seer, Role::Werewolf, Role::Possessed}) {
    EXPECT_TRUE(assets().persona_for(r).binds(r));
  }
  EXPECT_EQ(assets().persona_for(Role::Villager).id, "king");
  EXPECT_EQ(assets().persona_for(Role::Werewolf).id, "soccer_junior");
  EXPECT_EQ(assets().persona_for(Role::Possessed).id, "stammering_student");
}

TEST(Assets, WerewolfCardsSplitByDay) {
  const auto d1 = assets().cards_for("werewolf", 1);
  const auto d2 = assets().cards_for("werewolf", 2);
  ASSERT_FALSE(d1.empty());
  ASSERT_FALSE(d2.empty());
  std::set<std::string> ids1;
  for (const auto& c : d1) ids1.insert(c.id);
  for (const auto& c : d2) EXPECT_EQ(ids1.count(c.id), 0u) << c.id;
  EXPECT_EQ(assets().cards_for("seer", 1).size(), 5u);
}

TEST(Prompt, SixComponentsInOrder) {
  AgentMemory m;
  m.self = AgentId{2};
  m.own_role = Role::Seer;
  m.day = 1;
  const auto bundle = build_prompt(m, assets().card("seer.lead_with_result"), assets().persona_for(Role::Seer), assets());
  const std::string text = render_prompt(bundle);
  std::size_t at = 0;
  for (auto h : {kTaskHeading, kPersonaHeading, kRulesHeading, kStrategyHeading, kSummaryHeading, kTodayHeading}) {
    const auto pos = text.find(h, at);
    ASSERT_NE(pos, std::string::npos) << h;
    at = pos + h.size();
  }
}

TEST(Prompt, PersonaMustBindTheRole) {
  AgentMemory m;
  m.self = AgentId{1};
  m.own_role = Role::Werewolf;
  m.day = 1;
  EXPECT_THROW(build_prompt(m, assets().card("werewolf.day1.deflect"), assets().persona_for(Role::Seer), assets()),
               MissingComponent);
}

TEST(Prompt, GoldenSnapshot) {
  AgentMemory m;
  m.self = AgentId{5};
  m.own_role = Role::Seer;
  m.day = 2;
  m.alive = {AgentId{1}, AgentId{2}, AgentId{5}};
  m.summaries.push_back({0, {{AgentId{1}, "greeted everyone."}, {AgentId{5}, "greeted everyone."}}, false});
  m.summaries.push_back({1, {{AgentId{1}, "claims to be the seer; reported Agent[05] as a werewolf."}}, false});
  m.divinations.push_back({0, AgentId{5}, AgentId{3}, game::Species::Human});
  m.divinations.push_back({1, AgentId{5}, AgentId{2}, game::Species::Wolf});
  m.executions.push_back({1, AgentId{3}});
  m.attacks.push_back({1, AgentId{4}});
  m.today_talks.push_back({2, 0, 0, AgentId{1}, "I am the possessed. Werewolf, please reveal yourself."});
  m.today_talks.push_back({2, 0, 1, AgentId{2}, "Over"});
  const auto text = render_prompt(
      build_prompt(m, assets().card("seer.expose_fake"), assets().persona_for(Role::Seer), assets()));
  const std::filesystem::path golden = std::filesystem::path(WOLF_TEST_GOLDEN_DIR) / "prompt_seer_day2.txt";
  if (std::getenv("WOLF_UPDATE_GOLDEN")) std::ofstream(golden, std::ios::binary) << text;
  EXPECT_EQ(text, slurp(golden));
  // Control tokens never reach the prompt.
  EXPECT_EQ(text.find("Agent[02]: Over"), std::string::npos);
}

TEST(Summary, SeerClaimIsRecordedForTheClaimant) {
  llm::ScriptedBackend backend(1);
  Harness h(Role::Villager, AgentId{3}, backend);
  std::vector<game::TalkEntry> day{
      {1, 0, 0, AgentId{1}, "Good morning."},
      {1, 0, 1, AgentId{5}, "I am the seer. Last night I divined Agent[02], and Agent[02] is a werewolf!"},
      {1, 0, 2, AgentId{3}, "Agent[05], why Agent[02]?"},
  };
  h.memory.today_talks = day;
  auto ctx = h.ctx();
  const auto s = summarize_day(day, 1, ctx);
  EXPECT_FALSE(s.degraded);
  ASSERT_TRUE(s.per_agent_claims.count(AgentId{5}));
  EXPECT_NE(s.per_agent_claims.at(AgentId{5}).find("seer"), std::string::npos);
  for (const auto& e : day) EXPECT_TRUE(s.per_agent_claims.count(e.speaker)) << e.speaker.value();
}

TEST(Summary, BackendFailureRetriesThenDegrades) {
  FailingBackend backend;
  Harness h(Role::Villager, AgentId{3}, backend);
  std::vector<game::TalkEntry> day{{1, 0, 0, AgentId{1}, std::string(400, 'x')}};
  auto ctx = h.ctx();
  const auto s = summarize_day(day, 1, ctx);
  EXPECT_EQ(backend.calls, 2);
  EXPECT_TRUE(s.degraded);
  EXPECT_LT(s.per_agent_claims.at(AgentId{1}).size(), 400u);
}

TEST(Summary, StoredSummaryAppearsInNextDayPrompt) {
  FixedBackend backend("Agent[01]: promised to protect the village.");
  Harness h(Role::Villager, AgentId{2}, backend);
  std::vector<game::TalkEntry> day{{1, 0, 0, AgentId{1}, "I will protect the village, trust me."}};
  auto ctx = h.ctx();
  h.memory.summaries.push_back(summarize_day(day, 1, ctx));
  h.memory.day = 2;
  const auto text = render_prompt(
      build_prompt(h.memory, assets().card("villager.discussion"), assets().persona_for(Role::Villager), assets()));
  EXPECT_NE(text.find("promised to protect the village"), std::string::npos);
  EXPECT_EQ(text.find("I will protect the village, trust me."), std::string::npos);
}

TEST(Summary, SummariesAreShorterThanRawHistoryOnCaseStudy) {
  const auto log = match::read_log_file(std::string(WOLF_TEST_DATA_DIR) + "/case_study.jsonl");
  std::vector<game::TalkEntry> all;
  for (const auto& e : log.events) {
    if (auto* t = std::get_if<match::TalkEvent>(&e.event)) all.push_back(t->entry);
  }
  const int last_day = all.back().day;
  ASSERT_GE(last_day, 2);

  llm::ScriptedBackend backend(0);
  Harness h(Role::Villager, AgentId{4}, backend);
  std::vector<DaySummary> summaries;
  std::vector<game::TalkEntry> today;
  for (int d = 0; d <= last_day; ++d) {
    std::vector<game::TalkEntry> day;
    for (const auto& t : all) {
      if (t.day == d) day.push_back(t);
    }
    if (d == last_day) {
      today = day;
      break;
    }
    h.memory.day = d;
    h.memory.today_talks = day;
    auto ctx = h.ctx();
    summaries.push_back(summarize_day(day, d, ctx));
  }
  const auto compact = tokens(render_summaries(summaries) + render_history(today));
  const auto raw = tokens(render_history(all));
  EXPECT_LT(compact, raw);
}

TEST(Decide, SingletonCandidateIgnoresBackend) {
  FixedBackend backend("I choose Agent[01]");
  Harness h(Role::Villager, AgentId{2}, backend);
  auto ctx = h.ctx();
  EXPECT_EQ(decide_target(DecisionKind::Vote, ctx, {AgentId{3}}).target, AgentId{3});
  EXPECT_TRUE(backend.requests.empty());
}

TEST(Decide, ChainOfThoughtAnswerIsExtracted) {
  FixedBackend backend("Agent[02] was quiet, Agent[05] lied about the divination... therefore I vote for Agent[05]");
  Harness h(Role::Villager, AgentId{1}, backend);
  auto ctx = h.ctx();
  const auto d = decide_target(DecisionKind::Vote, ctx, {AgentId{2}, AgentId{3}, AgentId{4}, AgentId{5}});
  EXPECT_EQ(d.target, AgentId{5});
  EXPECT_FALSE(d.fallback);
  ASSERT_EQ(backend.requests.size(), 1u);
  EXPECT_EQ(backend.requests[0].purpose, llm::Purpose::TargetDecision);
  EXPECT_EQ(backend.requests[0].temperature, 0.0);
  EXPECT_NE(backend.requests[0].prompt_text.find("Agent[05]"), std::string::npos);
}

TEST(Decide, DeclaredTargetWins) {
  FixedBackend backend("Agent[02]");
  Harness h(Role::Possessed, AgentId{1}, backend);
  h.memory.declared_vote_target = AgentId{5};
  auto ctx = h.ctx();
  EXPECT_EQ(decide_target(DecisionKind::Vote, ctx, {AgentId{2}, AgentId{3}, AgentId{5}}).target, AgentId{5});
}

TEST(Decide, UnreadableAnswerRetriesOnceThenFallsBack) {
  FixedBackend backend("I cannot decide.");
  Harness h(Role::Seer, AgentId{1}, backend);
  auto ctx = h.ctx();
  const std::vector<AgentId> c{AgentId{2}, AgentId{3}};
  const auto d = decide_target(DecisionKind::Divine, ctx, c);
  EXPECT_TRUE(d.fallback);
  EXPECT_NE(std::find(c.begin(), c.end(), d.target), c.end());
  EXPECT_EQ(backend.requests.size(), 2u);
  EXPECT_EQ(backend.requests[1].digest->step, llm::steps::kReformat);
  EXPECT_FALSE(h.notes.empty());
}

TEST(Decide, AttackIsNameOnly) {
  FixedBackend backend("Agent[04]");
  Harness h(Role::Werewolf, AgentId{2}, backend);
  auto ctx = h.ctx();
  EXPECT_EQ(decide_attack(ctx, {AgentId{1}, AgentId{4}}).target, AgentId{4});
  EXPECT_EQ(backend.requests.at(0).purpose, llm::Purpose::AttackDecision);
  EXPECT_LE(backend.requests.at(0).max_tokens, 16);
}

TEST(Declare, DeclarationParsesBackAndBindsTheVote) {
  // The model names the wrong agent; the canonical sentence is appended.
  FixedBackend backend("I have thought about it. Agent[07] is fine.");
  Harness h(Role::Villager, AgentId{1}, backend);
  auto ctx = h.ctx();
  const std::string text = declare_vote(ctx);
  ASSERT_TRUE(h.memory.declared_vote_target.has_value());
  EXPECT_EQ(extract_declared_vote(text), h.memory.declared_vote_target->value());
  EXPECT_EQ(decide_target(DecisionKind::Vote, ctx, h.memory.others_alive()).target, *h.memory.declared_vote_target);
}

TEST(Declare, SeerAnnouncesDivinationBeforeVote) {
  llm::ScriptedBackend backend(3);
  Harness h(Role::Seer, AgentId{1}, backend);
  auto ctx = h.ctx();
  const std::string text = declare_vote(ctx);
  ASSERT_TRUE(h.memory.declared_divine_target.has_value());
  const auto divine_at = text.find("divine " + game::agent_name(*h.memory.declared_divine_target));
  const auto vote_at = text.find("vote");
  ASSERT_NE(divine_at, std::string::npos) << text;
  EXPECT_LT(divine_at, vote_at);
}

TEST(AgentClient, BackendFailureBecomesSkip) {
  FailingBackend backend;
  auto shared = std::make_shared<const AgentAssets>(assets());
  Agent agent(shared, backend, AgentOptions{1, 10, 3});
  protocol::Message init{protocol::MessageKind::Initialize, {}};
  init.view.viewer = AgentId{1};
  init.view.viewer_role = Role::Villager;
  init.view.alive = {AgentId{1}, AgentId{2}, AgentId{3}, AgentId{4}, AgentId{5}};
  EXPECT_FALSE(agent.handle(init).has_value());
  protocol::Message talk{protocol::MessageKind::Talk, init.view};
  const auto reply = agent.handle(talk);
  ASSERT_TRUE(reply.has_value());
  EXPECT_EQ(reply->text, "Skip");
}

TEST(AgentClient, RejectsTooSmallBudget) {
  llm::ScriptedBackend backend(0);
  EXPECT_THROW(Agent(std::make_shared<const AgentAssets>(assets()), backend, AgentOptions{0, 1, 3}),
               std::invalid_argument);
}
