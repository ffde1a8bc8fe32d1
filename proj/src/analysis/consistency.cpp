#include "wolf/analysis/consistency.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "wolf/agents/grammar.hpp"

namespace wolf::analysis {

using match::LoggedEvent;

namespace {

// Event i of the log sits on line i + 2; line 1 is the header.
int line_of(std::size_t index) { return static_cast<int>(index) + 2; }

struct IndexedTalk {
  std::size_t index;
  const match::TalkEvent* talk;
};

}  // namespace

std::string_view to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::VoteMismatch: return "vote_mismatch";
    case ViolationKind::DeadSpeaker: return "dead_speaker";
    case ViolationKind::DuplicateTurnSpeech: return "duplicate_turn_speech";
    case ViolationKind::MissingSeerReport: return "missing_seer_report";
  }
  return "unknown";
}

int ConsistencyReport::count(ViolationKind k) const {
  return static_cast<int>(std::count_if(violations.begin(), violations.end(), [&](const auto& v) { return v.kind == k; }));
}

double distinct_n(const std::vector<std::string>& utterances, int n) {
  std::set<std::vector<std::string>> unique;
  std::size_t total = 0;
  for (const auto& u : utterances) {
    std::vector<std::string> tokens;
    std::istringstream in(u);
    for (std::string t; in >> t;) {
      std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      tokens.push_back(std::move(t));
    }
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i) {
      unique.emplace(tokens.begin() + static_cast<std::ptrdiff_t>(i), tokens.begin() + static_cast<std::ptrdiff_t>(i + n));
      ++total;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(unique.size()) / static_cast<double>(total);
}

ConsistencyReport analyze(const match::EventLog& log) {
  ConsistencyReport report;
  const auto& events = log.events;

  // Who is dead, and since which line.
  std::map<AgentId, std::size_t> died_at;
  std::map<std::pair<int, AgentId>, std::size_t> vote_at;  // (day, voter) -> event index
  std::map<std::pair<int, AgentId>, std::vector<IndexedTalk>> talks_by;  // (day, speaker)
  std::map<std::tuple<int, int, AgentId>, std::size_t> first_in_turn;
  std::vector<std::string> texts;

  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& ev = events[i].event;
    if (const auto* t = std::get_if<match::TalkEvent>(&ev)) {
      const auto& e = t->entry;
      if (auto it = died_at.find(e.speaker); it != died_at.end()) {
        report.violations.push_back({ViolationKind::DeadSpeaker, e.day, e.speaker,
                                     game::agent_name(e.speaker) + " spoke after being removed",
                                     {line_of(it->second), line_of(i)}});
      }
      auto key = std::make_tuple(e.day, e.turn, e.speaker);
      if (auto [it, fresh] = first_in_turn.emplace(key, i); !fresh) {
        report.violations.push_back({ViolationKind::DuplicateTurnSpeech, e.day, e.speaker,
                                     game::agent_name(e.speaker) + " spoke twice in turn " + std::to_string(e.turn),
                                     {line_of(it->second), line_of(i)}});
      }
      talks_by[{e.day, e.speaker}].push_back({i, t});
      if (!e.is_control()) texts.push_back(e.content);
    } else if (const auto* v = std::get_if<match::VoteEvent>(&ev)) {
      vote_at.emplace(std::make_pair(v->vote.day, v->vote.voter), i);
    } else if (const auto* x = std::get_if<match::ExecutionEvent>(&ev)) {
      died_at.emplace(x->target, i);
    } else if (const auto* a = std::get_if<match::AttackEvent>(&ev)) {
      died_at.emplace(a->attack.target, i);
    }
  }

  // Final-turn declarations against the votes cast.
  for (const auto& [key, list] : talks_by) {
    for (const auto& it : list) {
      const auto& e = it.talk->entry;
      if (!it.talk->final_turn || e.is_control()) continue;
      const auto declared = agents::extract_declared_vote(e.content);
      if (!declared) continue;
      auto v = vote_at.find({e.day, e.speaker});
      if (v == vote_at.end()) continue;  // no vote that day to compare with
      ++report.declarations;
      const auto& vote = std::get<match::VoteEvent>(events[v->second].event).vote;
      if (vote.target.value() == *declared) {
        ++report.declarations_matched;
      } else {
        report.violations.push_back({ViolationKind::VoteMismatch, e.day, e.speaker,
                                     game::agent_name(e.speaker) + " declared Agent " + std::to_string(*declared) +
                                         " but voted " + game::agent_name(vote.target),
                                     {line_of(it.index), line_of(v->second)}});
      }
    }
  }

  // A seer claimant who is alive and speaks the next day owes a result, unless
  // they come out as something else.
  std::set<std::pair<int, AgentId>> checked;
  for (const auto& [key, list] : talks_by) {
    const auto [day, agent] = key;
    const IndexedTalk* claim = nullptr;
    for (const auto& it : list) {
      if (agents::analyze_utterance(it.talk->entry.content).seer_claim) {
        claim = &it;
        break;
      }
    }
    if (!claim || !checked.emplace(day + 1, agent).second) continue;
    auto next = talks_by.find({day + 1, agent});
    if (next == talks_by.end()) continue;
    bool spoke = false;
    bool answered = false;
    for (const auto& it : next->second) {
      const auto& e = it.talk->entry;
      if (e.is_control()) continue;
      if (auto d = died_at.find(agent); d != died_at.end() && d->second < it.index) continue;
      spoke = true;
      const auto f = agents::analyze_utterance(e.content);
      if (f.report || (f.coming_out && *f.coming_out != game::Role::Seer)) answered = true;
    }
    if (spoke && !answered) {
      std::vector<int> lines{line_of(claim->index)};
      for (const auto& it : next->second) lines.push_back(line_of(it.index));
      report.violations.push_back({ViolationKind::MissingSeerReport, day + 1, agent,
                                   game::agent_name(agent) + " claimed seer on day " + std::to_string(day) +
                                       " and reported nothing on day " + std::to_string(day + 1),
                                   std::move(lines)});
    }
  }

  std::stable_sort(report.violations.begin(), report.violations.end(), [](const Violation& a, const Violation& b) {
    return a.evidence_lines.back() < b.evidence_lines.back();
  });
  report.utterances = static_cast<int>(texts.size());
  report.distinct_1 = distinct_n(texts, 1);
  report.distinct_2 = distinct_n(texts, 2);
  return report;
}

nlohmann::json to_json(const Violation& v) {
  return {{"kind", to_string(v.kind)},
          {"day", v.day},
          {"agent", v.agent.value()},
          {"detail", v.detail},
          {"evidence_lines", v.evidence_lines}};
}

nlohmann::json to_json(const ConsistencyReport& r) {
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : r.violations) violations.push_back(to_json(v));
  nlohmann::json counts = nlohmann::json::object();
  for (auto k : {ViolationKind::VoteMismatch, ViolationKind::DeadSpeaker, ViolationKind::DuplicateTurnSpeech,
                 ViolationKind::MissingSeerReport}) {
    counts[std::string(to_string(k))] = r.count(k);
  }
  return {{"violations", violations},
          {"violation_counts", counts},
          {"declarations", r.declarations},
          {"declarations_matched", r.declarations_matched},
          {"utterances", r.utterances},
          {"distinct_1", r.distinct_1},
          {"distinct_2", r.distinct_2}};
}

}  // namespace wolf::analysis
