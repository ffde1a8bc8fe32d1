#include "wolf/agents/grammar.hpp"

#include <algorithm>
#include <regex>
#include <string>

namespace wolf::agents {

namespace {

const std::regex& target_re() {
  static const std::regex re(R"(Agent\s*\[\s*0?([0-9])\s*\]|Agent\s+0?([0-9])\b|\b([0-9])\b)",
                             std::regex::ECMAScript | std::regex::icase);
  return re;
}

const std::regex& claim_re() {
  static const std::regex re(R"(\bI(?:\s+am|'m|’m)\s+(?:the\s+|a\s+)?(?:true\s+|real\s+)?(seer|villager|possessed|werewolf)\b)",
                             std::regex::ECMAScript | std::regex::icase);
  return re;
}

const std::regex& report_re() {
  static const std::regex re(
      R"(divin\w*[^.!?\n]*?Agent\s*\[?\s*0?([1-5])\s*\]?[^.!?\n]*?\b(human|werewolf|wolf)\b)",
      std::regex::ECMAScript | std::regex::icase);
  return re;
}

const std::regex& vote_re() {
  static const std::regex re(R"(\bvot\w*\b[^.!?\n]*?Agent\s*\[?\s*0?([0-9])\s*\]?)",
                             std::regex::ECMAScript | std::regex::icase);
  return re;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::optional<int> extract_agent_number(std::string_view text) {
  std::optional<int> last;
  const std::string s(text);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), target_re()); it != std::sregex_iterator(); ++it) {
    for (int g = 1; g <= 3; ++g) {
      if ((*it)[g].matched) {
        last = std::stoi((*it)[g].str());
        break;
      }
    }
  }
  return last;
}

std::optional<int> extract_declared_vote(std::string_view text) {
  std::optional<int> last;
  const std::string s(text);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), vote_re()); it != std::sregex_iterator(); ++it) {
    last = std::stoi((*it)[1].str());
  }
  return last ? last : extract_agent_number(text);
}

std::optional<game::AgentId> extract_target(std::string_view text, std::span<const game::AgentId> candidates) {
  auto n = extract_agent_number(text);
  if (!n) return std::nullopt;
  game::AgentId id{*n};
  if (std::find(candidates.begin(), candidates.end(), id) == candidates.end()) return std::nullopt;
  return id;
}

std::optional<int> extract_choice(std::string_view text, int max) {
  static const std::regex num(R"(\d+)");
  std::optional<int> last;
  const std::string s(text);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), num); it != std::sregex_iterator(); ++it) {
    const std::string digits = it->str();
    if (digits.size() > 3) continue;
    const int v = std::stoi(digits);
    if (v >= 1 && v <= max) last = v;
  }
  return last;
}

UtteranceFacts analyze_utterance(std::string_view text) {
  UtteranceFacts facts;
  const std::string s(text);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), claim_re()); it != std::sregex_iterator(); ++it) {
    const std::string role = lower((*it)[1].str());
    if (role == "seer") {
      facts.seer_claim = true;
    } else if (!facts.coming_out) {
      facts.coming_out = game::role_from_string(role == "villager"    ? "VILLAGER"
                                                : role == "possessed" ? "POSSESSED"
                                                                      : "WEREWOLF");
    }
  }
  std::smatch m;
  if (std::regex_search(s, m, report_re())) {
    const std::string species = lower(m[2].str());
    facts.report = DivinationReport{game::AgentId{std::stoi(m[1].str())},
                                    species == "human" ? game::Species::Human : game::Species::Wolf};
  }
  return facts;
}

}  // namespace wolf::agents
