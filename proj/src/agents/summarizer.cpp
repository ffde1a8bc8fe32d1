#include <algorithm>
#include <regex>

#include "wolf/agents/policies.hpp"
#include "wolf/llm/steps.hpp"

namespace wolf::agents {

namespace {

constexpr std::size_t kDegradedExcerpt = 160;

std::vector<AgentId> speakers_of(std::span<const game::TalkEntry> history) {
  std::vector<AgentId> out;
  for (const auto& t : history) {
    if (!t.is_control() && std::find(out.begin(), out.end(), t.speaker) == out.end()) out.push_back(t.speaker);
  }
  return out;
}

DaySummary degraded_summary(std::span<const game::TalkEntry> history, int day) {
  DaySummary s;
  s.day = day;
  s.degraded = true;
  for (const auto& t : history) {
    if (t.is_control()) continue;
    std::string& text = s.per_agent_claims[t.speaker];
    if (text.size() >= kDegradedExcerpt) continue;
    if (!text.empty()) text += " / ";
    text += t.content;
    if (text.size() > kDegradedExcerpt) text = text.substr(0, kDegradedExcerpt) + "...";
  }
  return s;
}

}  // namespace

void AgentContext::note(std::string message) const {
  if (diagnostics) diagnostics->push_back(std::move(message));
}

DaySummary parse_summary(std::string_view completion, std::span<const game::TalkEntry> history, int day) {
  static const std::regex line_re(R"(^\s*[-*]?\s*Agent\s*\[?\s*0?([1-5])\s*\]?\s*[:\-]\s*(.*\S)\s*$)",
                                  std::regex::ECMAScript | std::regex::icase);
  DaySummary s;
  s.day = day;
  std::size_t start = 0;
  while (start <= completion.size()) {
    auto end = completion.find('\n', start);
    if (end == std::string_view::npos) end = completion.size();
    const std::string line(completion.substr(start, end - start));
    std::smatch m;
    if (std::regex_match(line, m, line_re)) {
      s.per_agent_claims.try_emplace(AgentId{std::stoi(m[1].str())}, m[2].str());
    }
    start = end + 1;
  }
  for (AgentId id : speakers_of(history)) s.per_agent_claims.try_emplace(id, "No notable claims.");
  return s;
}

DaySummary summarize_day(std::span<const game::TalkEntry> history, int day, AgentContext& ctx) {
  if (speakers_of(history).empty()) return DaySummary{day, {}, false};

  llm::CompletionRequest req;
  req.purpose = llm::Purpose::Summary;
  req.temperature = llm::default_temperature(req.purpose);
  req.prompt_text = fill_template(ctx.assets.templates.summary, {{"HISTORY", render_history(history)}});
  req.digest = make_digest(ctx, llm::steps::kSummary);
  req.digest->today.assign(history.begin(), history.end());

  for (int attempt = 0; attempt < 2; ++attempt) {
    try {
      return parse_summary(ctx.backend.complete(req), history, day);
    } catch (const llm::BackendFailure& e) {
      ctx.note("summary for day " + std::to_string(day) + " failed: " + e.what());
    }
  }
  ctx.note("summary for day " + std::to_string(day) + " degraded to raw excerpts");
  return degraded_summary(history, day);
}

}  // namespace wolf::agents
