#include "support.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "wolf/agents/grammar.hpp"

namespace wolf::testkit {

using game::AgentId;
using game::Role;

game::Status win_oracle(const game::RoleAssignment& roles, unsigned alive_mask) {
  int wolves = 0;
  int others = 0;
  for (int slot = 0; slot < 5; ++slot) {
    if (!(alive_mask & (1u << slot))) continue;
    if (roles[static_cast<std::size_t>(slot)] == Role::Werewolf) {
      ++wolves;
    } else {
      ++others;
    }
  }
  if (wolves == 0) return game::Status::HumanWin;
  if (others <= wolves) return game::Status::WerewolfWin;
  return game::Status::Ongoing;
}

std::vector<game::RoleAssignment> all_role_assignments() {
  game::RoleAssignment r{Role::Villager, Role::Villager, Role::Seer, Role::Werewolf, Role::Possessed};
  std::sort(r.begin(), r.end());
  std::vector<game::RoleAssignment> out;
  do {
    out.push_back(r);
  } while (std::next_permutation(r.begin(), r.end()));
  return out;
}

std::vector<AgentId> argmax_oracle(const std::vector<game::VoteRecord>& votes) {
  std::vector<int> count(6, 0);
  for (const auto& v : votes) count[static_cast<std::size_t>(v.target.value())] += 1;
  const int best = *std::max_element(count.begin(), count.end());
  std::vector<AgentId> out;
  for (int i = 1; i <= 5; ++i) {
    if (count[static_cast<std::size_t>(i)] == best) out.push_back(AgentId{i});
  }
  return out;
}

namespace {

std::size_t occurrences(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

std::string leakage(const std::string& encoded_view, const game::GameState& state) {
  auto j = nlohmann::json::parse(encoded_view);
  const AgentId viewer{j.at("agent").get<int>()};
  const Role own = state.role(viewer);
  if (j.at("role") != game::to_string(own)) return "role field is not the viewer's own role";

  int wolf_results = 0;
  if (!j.at("divine").is_null()) {
    if (own != Role::Seer) return "a non-seer received a divination result";
    const auto& d = j.at("divine");
    const game::DivineRecord rec{d.at("day").get<int>(), AgentId{d.at("agent").get<int>()},
                                 AgentId{d.at("target").get<int>()},
                                 *game::species_from_string(d.at("result").get<std::string>())};
    if (rec.seer != viewer) return "divination record of another agent";
    if (std::find(state.divinations.begin(), state.divinations.end(), rec) == state.divinations.end()) {
      return "divination record not in the game state";
    }
    if (rec.result == game::Species::Wolf) ++wolf_results;
  }
  // Utterances are free text; everything else must carry no role names beyond
  // the two allowed above.
  for (auto& t : j.at("talk")) t["text"] = "";
  const std::string rest = j.dump();
  for (Role r : {Role::Villager, Role::Seer, Role::Werewolf, Role::Possessed}) {
    const std::string token = "\"" + std::string(game::to_string(r)) + "\"";
    std::size_t allowed = (r == own) ? 1 : 0;
    if (r == Role::Werewolf) allowed += static_cast<std::size_t>(wolf_results);
    if (occurrences(rest, token) != allowed) return "role token " + token + " appears outside the allowed fields";
  }
  return {};
}

protocol::Message random_message(game::Rng& rng) {
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto agent = [&] { return AgentId{uni(1, 5)}; };
  static const std::vector<std::string> pieces{
      "Agent[03]", "I vote for", "Over", "Skip", "\"quoted\"", "back\\slash", "line\nbreak", "tab\t", "caf\xc3\xa9",
      "\xe7\x8b\xbc", "{json}", " ", "werewolf", "", "\xf0\x9f\x90\xba"};
  auto text = [&] {
    std::string s;
    const int n = uni(0, 6);
    for (int i = 0; i < n; ++i) s += pieces[static_cast<std::size_t>(uni(0, static_cast<int>(pieces.size()) - 1))];
    return s;
  };

  protocol::Message m;
  m.kind = static_cast<protocol::MessageKind>(uni(0, 7));
  auto& v = m.view;
  v.viewer = agent();
  v.day = uni(0, 2);
  v.phase = static_cast<game::Phase>(uni(0, 2));
  for (AgentId id : game::all_agents()) {
    if (uni(0, 3) != 0) v.alive.push_back(id);
  }
  v.viewer_role = static_cast<Role>(uni(0, 3));
  const int talks = uni(0, 6);
  for (int i = 0; i < talks; ++i) v.talk_delta.push_back({v.day, uni(0, 9), i, agent(), text()});
  if (uni(0, 1)) v.executed = agent();
  if (uni(0, 1)) v.attacked = agent();
  if (uni(0, 1)) {
    v.divine_result = game::DivineRecord{uni(0, 2), agent(), agent(),
                                         uni(0, 1) ? game::Species::Human : game::Species::Wolf};
  }
  const int votes = uni(0, 5);
  for (int i = 0; i < votes; ++i) v.vote_history.push_back({uni(1, 2), agent(), agent()});
  return m;
}

const char* fault_name(Fault f) {
  switch (f) {
    case Fault::VoteMismatch: return "vote_mismatch";
    case Fault::DeadSpeaker: return "dead_speaker";
    case Fault::DuplicateTurnSpeech: return "duplicate_turn_speech";
    case Fault::MissingSeerReport: return "missing_seer_report";
  }
  return "?";
}

namespace {

using match::EventLog;
using match::LoggedEvent;
using match::TalkEvent;

const TalkEvent* talk_at(const EventLog& log, std::size_t i) { return std::get_if<TalkEvent>(&log.events[i].event); }

void renumber(EventLog& log) {
  std::uint64_t seq = 0;
  for (auto& e : log.events) e.seq = ++seq;
}

// Index of the event at which `id` is removed, or events.size().
std::size_t death_index(const EventLog& log, AgentId id) {
  for (std::size_t i = 0; i < log.events.size(); ++i) {
    const auto& ev = log.events[i].event;
    if (auto* x = std::get_if<match::ExecutionEvent>(&ev); x && x->target == id) return i;
    if (auto* a = std::get_if<match::AttackEvent>(&ev); a && a->attack.target == id) return i;
  }
  return log.events.size();
}

template <class T>
const T& pick(const std::vector<T>& v, game::Rng& rng) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

bool neutral(const std::string& text) {
  const auto f = agents::analyze_utterance(text);
  return !f.seer_claim && !f.coming_out && !f.report;
}

}  // namespace

std::optional<EventLog> inject(const EventLog& clean, Fault fault, game::Rng& rng) {
  EventLog log = clean;
  const auto& ev = log.events;

  if (fault == Fault::VoteMismatch) {
    // Votes whose caster declared that same target on the final turn.
    std::vector<std::size_t> sites;
    for (std::size_t i = 0; i < ev.size(); ++i) {
      const auto* v = std::get_if<match::VoteEvent>(&ev[i].event);
      if (!v) continue;
      for (std::size_t k = 0; k < i; ++k) {
        const auto* t = talk_at(log, k);
        if (t && t->final_turn && t->entry.day == v->vote.day && t->entry.speaker == v->vote.voter &&
            agents::extract_declared_vote(t->entry.content) == v->vote.target.value()) {
          sites.push_back(i);
        }
      }
    }
    if (sites.empty()) return std::nullopt;
    const std::size_t i = pick(sites, rng);
    auto& vote = std::get<match::VoteEvent>(log.events[i].event).vote;
    std::vector<AgentId> others;
    for (AgentId id : game::all_agents()) {
      if (id != vote.voter && id != vote.target && death_index(log, id) > i) others.push_back(id);
    }
    if (others.empty()) return std::nullopt;
    vote.target = pick(others, rng);
    return log;
  }

  if (fault == Fault::DeadSpeaker) {
    // (dead agent, index of a later day's first talk event)
    std::vector<std::pair<AgentId, std::size_t>> sites;
    for (AgentId id : game::all_agents()) {
      const std::size_t died = death_index(log, id);
      for (std::size_t k = died + 1; k < ev.size(); ++k) {
        if (auto* t = talk_at(log, k); t && t->entry.turn == 0 && t->entry.order_in_turn == 0) sites.push_back({id, k});
      }
    }
    if (sites.empty()) return std::nullopt;
    const auto [who, k] = pick(sites, rng);
    const auto& first = talk_at(log, k)->entry;
    TalkEvent ghost{{first.day, 0, 99, who, "I still have something to say."}, false, false};
    log.events.insert(log.events.begin() + static_cast<std::ptrdiff_t>(k + 1), LoggedEvent{0, ghost});
    renumber(log);
    return log;
  }

  if (fault == Fault::DuplicateTurnSpeech) {
    std::vector<std::size_t> sites;
    for (std::size_t k = 0; k < ev.size(); ++k) {
      if (auto* t = talk_at(log, k); t && !t->final_turn && !t->entry.is_control()) sites.push_back(k);
    }
    if (sites.empty()) return std::nullopt;
    const std::size_t k = pick(sites, rng);
    TalkEvent again = *talk_at(log, k);
    again.entry.content = "Let me add one more thing.";
    again.entry.order_in_turn += 1;
    log.events.insert(log.events.begin() + static_cast<std::ptrdiff_t>(k + 1), LoggedEvent{0, again});
    renumber(log);
    return log;
  }

  // MissingSeerReport: turn an ordinary utterance into a seer claim when the
  // speaker's next-day talk neither reports a result nor retracts.
  std::vector<std::size_t> sites;
  for (std::size_t k = 0; k < ev.size(); ++k) {
    const auto* t = talk_at(log, k);
    if (!t || t->final_turn || t->entry.is_control()) continue;
    const AgentId who = t->entry.speaker;
    const int day = t->entry.day;
    bool claimed_today = false;
    bool spoke_next = false;
    bool answered_next = false;
    for (std::size_t j = 0; j < ev.size(); ++j) {
      const auto* u = talk_at(log, j);
      if (!u || u->entry.speaker != who) continue;
      if (u->entry.day == day && agents::analyze_utterance(u->entry.content).seer_claim) claimed_today = true;
      if (u->entry.day == day + 1 && !u->entry.is_control()) {
        spoke_next = true;
        if (!neutral(u->entry.content)) answered_next = true;
      }
    }
    if (!claimed_today && spoke_next && !answered_next) sites.push_back(k);
  }
  if (sites.empty()) return std::nullopt;
  const std::size_t k = pick(sites, rng);
  std::get<TalkEvent>(log.events[k].event).entry.content = "I am the seer.";
  return log;
}

}  // namespace wolf::testkit
