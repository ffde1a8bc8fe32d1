#include "wolf/analysis/transcript.hpp"

namespace wolf::analysis {

namespace {

std::string who(const match::EventLog& log, game::AgentId id, bool roles) {
  std::string s = game::agent_name(id);
  if (roles) s += " (" + std::string(game::to_string(game::role_of(log.header.roles, id))) + ")";
  return s;
}

}  // namespace

std::string render_transcript(const match::EventLog& log, const TranscriptOptions& options) {
  std::string out = "Match seed " + std::to_string(log.header.seed) + "\n";
  for (game::AgentId id : game::all_agents()) {
    out += "  " + who(log, id, options.show_roles) + "\n";
  }
  bool votes_open = false;
  bool night_open = false;
  for (const auto& le : log.events) {
    const auto& ev = le.event;
    if (const auto* d = std::get_if<match::DayStartEvent>(&ev)) {
      out += "\n=== Day " + std::to_string(d->day) + " ===\n";
      votes_open = night_open = false;
    } else if (const auto* t = std::get_if<match::TalkEvent>(&ev)) {
      if (t->entry.is_over() && !options.show_over) continue;
      out += who(log, t->entry.speaker, options.show_roles) + ": " + t->entry.content + "\n";
    } else if (const auto* v = std::get_if<match::VoteEvent>(&ev)) {
      if (!votes_open) out += "-- Vote --\n";
      votes_open = true;
      out += "  " + game::agent_name(v->vote.voter) + " -> " + game::agent_name(v->vote.target) + "\n";
    } else if (const auto* x = std::get_if<match::ExecutionEvent>(&ev)) {
      out += "  Executed: " + who(log, x->target, options.show_roles) + (x->tie ? " (tie-break)" : "") + "\n";
    } else if (const auto* a = std::get_if<match::AttackEvent>(&ev)) {
      if (!night_open) out += "-- Night --\n";
      night_open = true;
      out += "  Attacked: " + who(log, a->attack.target, options.show_roles) + "\n";
    } else if (const auto* s = std::get_if<match::DivineEvent>(&ev)) {
      if (!night_open) out += "-- Night --\n";
      night_open = true;
      out += "  " + game::agent_name(s->record.seer) + " divined " + game::agent_name(s->record.target) + ": " +
             std::string(game::to_string(s->record.result)) + "\n";
    } else if (const auto* e = std::get_if<match::GameEndEvent>(&ev)) {
      out += "\n=== " + std::string(e->winner == game::Status::HumanWin ? "Humans" : "Werewolf") + " win on day " +
             std::to_string(e->day) + " ===\n";
    }
  }
  return out;
}

}  // namespace wolf::analysis
