#include <algorithm>
#include <random>
#include <unordered_map>

#include "wolf/agents/grammar.hpp"
#include "wolf/llm/backend.hpp"
#include "wolf/llm/steps.hpp"

namespace wolf::llm {

using agents::UtteranceFacts;
using game::AgentId;
using game::Role;
using game::Species;

namespace {

// Scripted agents repeat a small set of lines, so regex analysis is memoized.
const UtteranceFacts& facts_of(const std::string& text) {
  thread_local std::unordered_map<std::string, UtteranceFacts> cache;
  auto it = cache.find(text);
  if (it == cache.end()) {
    if (cache.size() > 4096) cache.clear();
    it = cache.emplace(text, agents::analyze_utterance(text)).first;
  }
  return it->second;
}

bool contains(const std::vector<AgentId>& v, AgentId id) { return std::find(v.begin(), v.end(), id) != v.end(); }

// What can be read off today's public talk.
struct TableTalk {
  std::vector<AgentId> claimants;                          // said "I am the seer", excluding self
  std::vector<std::pair<AgentId, AgentId>> accusations;    // (claimant, accused as werewolf)
  std::vector<AgentId> possessed_outs;                     // came out as possessed, excluding self
  std::vector<AgentId> werewolf_outs;                      // came out as werewolf, excluding self
  std::vector<AgentId> speakers;                           // order of first non-control utterance
  bool self_revealed = false;
};

TableTalk read_table(const ScriptDigest& d) {
  TableTalk t;
  for (const auto& e : d.today) {
    if (e.is_control()) continue;
    if (!contains(t.speakers, e.speaker)) t.speakers.push_back(e.speaker);
    const auto& f = facts_of(e.content);
    const bool mine = e.speaker == d.self;
    if (f.coming_out && mine && *f.coming_out == d.role) t.self_revealed = true;
    if (mine) continue;
    if (f.seer_claim && !contains(t.claimants, e.speaker)) t.claimants.push_back(e.speaker);
    if (f.report && f.report->result == Species::Wolf) t.accusations.emplace_back(e.speaker, f.report->target);
    if (f.coming_out == Role::Possessed && !contains(t.possessed_outs, e.speaker)) t.possessed_outs.push_back(e.speaker);
    if (f.coming_out == Role::Werewolf && !contains(t.werewolf_outs, e.speaker)) t.werewolf_outs.push_back(e.speaker);
  }
  return t;
}

class Picker {
 public:
  Picker(const ScriptDigest& d, std::uint64_t seed, std::uint64_t counter) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(d.self.value()), static_cast<std::uint32_t>(counter),
                      static_cast<std::uint32_t>(counter >> 32)};
    gen_.seed(seq);
  }

  std::size_t index(std::size_t n) {
    std::uniform_int_distribution<std::size_t> dist(0, n - 1);
    return dist(gen_);
  }

  AgentId one_of(const std::vector<AgentId>& v) { return v.at(index(v.size())); }

  template <typename T, std::size_t N>
  const T& line(const std::array<T, N>& options) {
    return options[index(N)];
  }

 private:
  std::mt19937_64 gen_;
};

std::vector<AgentId> filter(const std::vector<AgentId>& v, auto pred) {
  std::vector<AgentId> out;
  std::copy_if(v.begin(), v.end(), std::back_inserter(out), pred);
  return out;
}

std::optional<AgentId> first_in(const std::vector<AgentId>& preferred, const std::vector<AgentId>& candidates) {
  for (AgentId id : preferred) {
    if (contains(candidates, id)) return id;
  }
  return std::nullopt;
}

std::optional<AgentId> known_wolf(const ScriptDigest& d) {
  for (const auto& r : d.divinations) {
    if (r.result == Species::Wolf) return r.target;
  }
  return std::nullopt;
}

bool divined(const ScriptDigest& d, AgentId id) {
  return std::any_of(d.divinations.begin(), d.divinations.end(), [&](const auto& r) { return r.target == id; });
}

std::vector<AgentId> others(const ScriptDigest& d) {
  const auto& pool = d.candidates.empty() ? d.alive : d.candidates;
  return filter(pool, [&](AgentId id) { return id != d.self; });
}

AgentId choose_vote(const ScriptDigest& d, const TableTalk& t, Picker& pick) {
  const auto cands = others(d);
  if (d.focus && contains(cands, *d.focus)) return *d.focus;
  switch (d.role) {
    case Role::Seer: {
      if (auto w = known_wolf(d); w && contains(cands, *w)) return *w;
      if (auto c = first_in(t.claimants, cands)) return *c;
      if (auto w = first_in(t.werewolf_outs, cands)) return *w;
      auto fresh = filter(cands, [&](AgentId id) { return !divined(d, id); });
      return pick.one_of(fresh.empty() ? cands : fresh);
    }
    case Role::Werewolf: {
      if (!t.possessed_outs.empty()) {
        auto rest = filter(cands, [&](AgentId id) { return !contains(t.possessed_outs, id); });
        if (!rest.empty()) return pick.one_of(rest);
      }
      for (const auto& [claimant, accused] : t.accusations) {
        if (accused == d.self && contains(cands, claimant)) return claimant;
      }
      if (auto c = first_in(t.claimants, cands)) return *c;
      return pick.one_of(cands);
    }
    case Role::Possessed: {
      if (!t.werewolf_outs.empty()) {
        auto rest = filter(cands, [&](AgentId id) { return !contains(t.werewolf_outs, id); });
        if (!rest.empty()) return pick.one_of(rest);
      }
      return pick.one_of(cands);
    }
    case Role::Villager: {
      if (auto w = first_in(t.werewolf_outs, cands)) return *w;
      for (auto it = t.accusations.rbegin(); it != t.accusations.rend(); ++it) {
        if (contains(cands, it->second)) return it->second;
      }
      return pick.one_of(cands);
    }
  }
  return pick.one_of(cands);
}

AgentId choose_divine(const ScriptDigest& d, const TableTalk& t, Picker& pick) {
  const auto cands = others(d);
  auto fresh = filter(cands, [&](AgentId id) { return !divined(d, id); });
  if (auto c = first_in(t.claimants, fresh)) return *c;
  return pick.one_of(fresh.empty() ? cands : fresh);
}

AgentId choose_attack(const ScriptDigest& d, const TableTalk& t, Picker& pick) {
  const auto cands = others(d);
  for (const auto& [claimant, accused] : t.accusations) {
    if (accused == d.self && contains(cands, claimant)) return claimant;
  }
  if (auto c = first_in(t.claimants, cands)) return *c;
  return pick.one_of(cands);
}

std::string name(AgentId id) { return game::agent_name(id); }

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string greeting(const ScriptDigest& d, Picker& pick) {
  static const std::array<std::string, 4> lines{
      "Hello everyone, nice to meet you all. Let's find the werewolf together.",
      "Good morning! I hope we can all talk honestly today.",
      "Hi all. Let's keep our heads cool and look for the werewolf.",
      "Greetings, everyone. I am looking forward to a fair discussion.",
  };
  return "This is " + name(d.self) + ". " + pick.line(lines);
}

std::string seer_talk(const ScriptDigest& d, const TableTalk& t, Picker& pick) {
  bool reported = false;
  std::vector<AgentId> countered;
  for (const auto& e : d.today) {
    if (e.speaker != d.self || e.is_control()) continue;
    if (facts_of(e.content).report) reported = true;
    for (AgentId c : t.claimants) {
      if (e.content.find(name(c) + " claims") != std::string::npos) countered.push_back(c);
    }
  }
  std::string out;
  if (!reported && !d.divinations.empty()) {
    const auto& last = d.divinations.back();
    out = "I am the seer. Last night I divined " + name(last.target) + ", and " + name(last.target) +
          (last.result == Species::Wolf ? " is a werewolf!" : " is human.");
  }
  for (AgentId c : t.claimants) {
    if (contains(countered, c)) continue;
    if (!out.empty()) out += ' ';
    out += name(c) + " claims to be the seer, but that is a lie. I am the true seer.";
  }
  if (!out.empty()) return out;
  if (auto w = known_wolf(d); w && contains(d.alive, *w)) {
    return "Everyone, " + name(*w) + " is the werewolf. Please trust my divination.";
  }
  static const std::array<std::string, 3> lines{
      "My divinations so far point elsewhere, so let us look hard at the quiet ones.",
      "I will keep divining until the werewolf is found. Share your suspicions, please.",
      "Think about who has been steering the vote. That is where the wolf hides.",
  };
  return pick.line(lines);
}

std::string werewolf_talk(const ScriptDigest& d, const TableTalk& t, Picker& pick) {
  if (d.day >= 2 && !t.possessed_outs.empty()) {
    const AgentId partner = t.possessed_outs.front();
    auto rest = filter(others(d), [&](AgentId id) { return id != partner; });
    const std::string target = rest.empty() ? std::string("the last one") : name(rest.front());
    if (t.self_revealed) return "Right, " + name(partner) + ", let's vote together for " + target + ".";
    return "I am the werewolf. " + name(partner) + ", let's vote together for " + target + ".";
  }
  for (const auto& [claimant, accused] : t.accusations) {
    if (accused == d.self) {
      return name(claimant) + ", why did you choose to divine me? I'm not the wolf, you are lying.";
    }
  }
  auto cands = others(d);
  const AgentId x = pick.one_of(cands);
  if (d.strategy_id.find("question_seer") != std::string::npos && !t.claimants.empty()) {
    return name(t.claimants.front()) + ", why did you pick that divination target? Explain your reasons.";
  }
  if (d.strategy_id.find("deflect") != std::string::npos) {
    return "Let's not rush the vote. " + name(x) + " has been awfully quiet, don't you think?";
  }
  static const std::array<std::string, 3> lines{
      " seems suspicious to me. Let's hear from them.",
      " has not said anything useful yet. What are you hiding?",
      ", what is your take on today's claims?",
  };
  return name(x) + pick.line(lines);
}

std::string possessed_talk(const ScriptDigest& d, const TableTalk& t, Picker& pick) {
  const std::string& sid = d.strategy_id;
  if (sid.find("come_out") != std::string::npos) {
    return "I am the possessed. Werewolf, please reveal yourself so we can vote together.";
  }
  if (sid.find("invite") != std::string::npos) {
    if (!t.werewolf_outs.empty()) {
      const AgentId wolf = t.werewolf_outs.front();
      auto rest = filter(others(d), [&](AgentId id) { return id != wolf; });
      if (!rest.empty()) return name(wolf) + ", great! Let's both vote for " + name(rest.front()) + ".";
    }
    return "Werewolf, please come out. We can still win together.";
  }
  const AgentId target = d.focus.value_or(pick.one_of(others(d)));
  if (sid.find("fake_claim") != std::string::npos) {
    return "I am the seer! Last night I divined " + name(target) + ", and " + name(target) + " is a werewolf!";
  }
  if (!t.claimants.empty()) {
    return "Don't believe " + name(t.claimants.front()) + ", I am the real seer. Vote for " + name(target) + "!";
  }
  return "Trust me, " + name(target) + " is the werewolf. Let's all vote for " + name(target) + ".";
}

std::string villager_line(const ScriptDigest& d, const TableTalk& t, Picker& pick) {
  const AgentId x = choose_vote(d, t, pick);
  static const std::array<std::string, 3> lines{
      ", your story does not add up to me. Please explain yourself.",
      ", I have my doubts about you. Convince me otherwise.",
      ", who do you suspect and why?",
  };
  return name(x) + pick.line(lines);
}

std::string summarize(const ScriptDigest& d) {
  std::vector<std::pair<AgentId, std::vector<std::string>>> per_agent;
  auto slot = [&](AgentId id) -> std::vector<std::string>& {
    for (auto& [a, notes] : per_agent) {
      if (a == id) return notes;
    }
    return per_agent.emplace_back(id, std::vector<std::string>{}).second;
  };
  auto add = [](std::vector<std::string>& notes, std::string note) {
    if (std::find(notes.begin(), notes.end(), note) == notes.end()) notes.push_back(std::move(note));
  };
  for (const auto& e : d.today) {
    if (e.is_control()) continue;
    auto& notes = slot(e.speaker);
    const auto& f = facts_of(e.content);
    if (f.seer_claim) add(notes, "claims to be the seer");
    if (f.coming_out) add(notes, "came out as " + lower(game::to_string(*f.coming_out)));
    if (f.report) {
      add(notes, "reported " + name(f.report->target) +
                     (f.report->result == Species::Wolf ? " as a werewolf" : " as human"));
    }
    if (auto pos = e.content.find("vote for "); pos != std::string::npos) {
      if (auto n = agents::extract_agent_number(e.content.substr(pos)); n && AgentId{*n}.valid()) {
        add(notes, "pushed a vote for " + name(AgentId{*n}));
      }
    }
  }
  std::string out;
  for (const auto& [id, notes] : per_agent) {
    out += name(id) + ": ";
    if (notes.empty()) {
      out += "made no notable claims";
    } else {
      for (std::size_t i = 0; i < notes.size(); ++i) out += (i ? "; " : "") + notes[i];
    }
    out += ".\n";
  }
  if (out.empty()) out = "Nobody said anything notable.\n";
  return out;
}

}  // namespace

std::string scripted_policy(const ScriptDigest& d, std::uint64_t seed, std::uint64_t counter) {
  namespace s = steps;
  Picker pick(d, seed, counter);
  const TableTalk t = read_table(d);
  const std::string& step = d.step;

  if (step == s::kGreeting) return greeting(d, pick);
  if (step == s::kSummary) return summarize(d);
  if (step == s::kDecideVote) {
    return "Let's think step by step. I weighed every claim made today. Therefore, I vote for " +
           name(choose_vote(d, t, pick)) + ".";
  }
  if (step == s::kDecideDivine) {
    return "Let's think step by step. I want to learn about a player I have not checked. Therefore, I will divine " +
           name(choose_divine(d, t, pick)) + ".";
  }
  if (step == s::kAttack) return name(choose_attack(d, t, pick));
  if (step == s::kReformat) return name(others(d).front());
  if (step == s::kSeerSelect || step == s::kWerewolfSelect) {
    const int n = std::max(1, d.options);
    return "Strategy " + std::to_string(1 + pick.index(static_cast<std::size_t>(n)));
  }
  if (step == s::kPossessedInfer) {
    return "From the greetings it is hard to tell, but the true seer is probably " + name(pick.one_of(others(d))) + ".";
  }
  if (step == s::kVoteDeclaration) {
    const AgentId target = d.focus.value_or(choose_vote(d, t, pick));
    std::string out;
    if (d.divine_focus) out = "Tonight I will divine " + name(*d.divine_focus) + ". ";
    return out + "I vote for " + name(target) + ".";
  }
  if (step == s::kSeerUtterance) return seer_talk(d, t, pick);
  if (step == s::kWerewolfUtterance) return werewolf_talk(d, t, pick);
  if (step == s::kPossessedUtterance) return possessed_talk(d, t, pick);
  if (step == s::kVillagerReasoning) {
    const AgentId x = choose_vote(d, t, pick);
    return "Reasoning: " + name(x) + " is the most doubtful player so far. Strategy: press " + name(x) +
           " for an explanation.";
  }
  if (step == s::kVillagerDirect) {
    if (!t.accusations.empty()) {
      const AgentId x = t.accusations.back().second;
      return name(x) + " was named as the werewolf. " + name(x) + ", what do you have to say?";
    }
    return "I have no special information yet. Has anyone divined somebody?";
  }
  if (step == s::kVillagerUtterance) return villager_line(d, t, pick);
  return "I am listening carefully to everyone.";
}

std::string ScriptedBackend::complete(const CompletionRequest& request) {
  if (!request.digest) throw BackendFailure("scripted backend needs a digest");
  std::uint64_t counter = 0;
  {
    std::lock_guard lock(mu_);
    counter = counters_[request.digest->self.value()]++;
  }
  return scripted_policy(*request.digest, seed_, counter);
}

std::uint64_t ScriptedBackend::calls(AgentId agent) const {
  std::lock_guard lock(mu_);
  auto it = counters_.find(agent.value());
  return it == counters_.end() ? 0 : it->second;
}

}  // namespace wolf::llm
