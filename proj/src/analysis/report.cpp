#include "wolf/analysis/report.hpp"

#include <cstdio>
#include <map>

namespace wolf::analysis {

GameSummary summarize_game(const match::EventLog& log, std::string log_file) {
  GameSummary g;
  g.seed = log.header.seed;
  g.log_file = std::move(log_file);
  g.roles = log.header.roles;
  g.survived.fill(true);
  for (const auto& le : log.events) {
    g.last_day = std::max(g.last_day, match::event_day(le.event));
    if (const auto* end = std::get_if<match::GameEndEvent>(&le.event)) g.winner = end->winner;
    if (const auto* t = std::get_if<match::TalkEvent>(&le.event); t && t->fallback) ++g.fallbacks;
    if (const auto* v = std::get_if<match::VoteEvent>(&le.event); v && v->fallback) ++g.fallbacks;
    if (const auto* a = std::get_if<match::AttackEvent>(&le.event); a && a->fallback) ++g.fallbacks;
    if (const auto* d = std::get_if<match::DivineEvent>(&le.event); d && d->fallback) ++g.fallbacks;
    if (const auto* x = std::get_if<match::ExecutionEvent>(&le.event)) g.survived[x->target.slot()] = false;
    if (const auto* a = std::get_if<match::AttackEvent>(&le.event)) g.survived[a->attack.target.slot()] = false;
  }
  g.consistency = analyze(log);
  return g;
}

int MatchReport::total_violations() const {
  int n = 0;
  for (const auto& g : games) n += static_cast<int>(g.consistency.violations.size());
  return n;
}

nlohmann::json MatchReport::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  std::map<std::string, int> wins{{"HUMAN", 0}, {"WEREWOLF", 0}, {"ONGOING", 0}};
  std::map<std::string, int> by_kind;
  int declarations = 0;
  int matched = 0;
  int fallbacks = 0;
  int day_sum = 0;
  // role -> {appearances, survivals, wins}
  std::map<std::string, std::array<int, 3>> per_role;
  for (const auto& g : games) {
    auto c = analysis::to_json(g.consistency);
    nlohmann::json agents = nlohmann::json::array();
    for (game::AgentId id : game::all_agents()) {
      const game::Role r = game::role_of(g.roles, id);
      const bool survived = g.survived[id.slot()];
      const bool won = (g.winner == game::Status::HumanWin && game::team_of(r) == game::Team::Human) ||
                       (g.winner == game::Status::WerewolfWin && game::team_of(r) == game::Team::Werewolf);
      agents.push_back({{"agent", id.value()}, {"role", game::to_string(r)}, {"survived", survived}, {"won", won}});
      auto& stats = per_role[std::string(game::to_string(r))];
      ++stats[0];
      stats[1] += survived;
      stats[2] += won;
    }
    list.push_back({{"seed", g.seed},
                    {"winner", game::to_string(g.winner)},
                    {"last_day", g.last_day},
                    {"agents", agents},
                    {"fallbacks", g.fallbacks},
                    {"log_file", g.log_file},
                    {"consistency", c}});
    day_sum += g.last_day;
    ++wins[std::string(game::to_string(g.winner))];
    for (auto& [k, v] : c["violation_counts"].items()) by_kind[k] += v.get<int>();
    declarations += g.consistency.declarations;
    matched += g.consistency.declarations_matched;
    fallbacks += g.fallbacks;
  }
  const double n = games.empty() ? 1.0 : static_cast<double>(games.size());
  nlohmann::json roles = nlohmann::json::object();
  for (const auto& [role, st] : per_role) {
    roles[role] = {{"appearances", st[0]},
                   {"survivals", st[1]},
                   {"wins", st[2]},
                   {"survival_rate", static_cast<double>(st[1]) / st[0]},
                   {"win_rate", static_cast<double>(st[2]) / st[0]}};
  }
  return {{"games", list},
          {"summary",
           {{"game_count", games.size()},
            {"human_win_rate", wins["HUMAN"] / n},
            {"werewolf_win_rate", wins["WEREWOLF"] / n},
            {"mean_end_day", day_sum / n},
            {"roles", roles},
            {"human_wins", wins["HUMAN"]},
            {"werewolf_wins", wins["WEREWOLF"]},
            {"unfinished", wins["ONGOING"]},
            {"violations", total_violations()},
            {"violation_counts", by_kind},
            {"declarations", declarations},
            {"declarations_matched", matched},
            {"fallbacks", fallbacks}}}};
}

std::string MatchReport::to_text() const {
  std::string out;
  char row[256];
  std::snprintf(row, sizeof row, "%-10s %-9s %4s %6s %9s %10s %9s\n", "seed", "winner", "days", "decl", "matched",
                "violations", "fallbacks");
  out += row;
  int decl = 0, matched = 0, viol = 0, fb = 0, humans = 0, wolves = 0;
  for (const auto& g : games) {
    const int v = static_cast<int>(g.consistency.violations.size());
    std::snprintf(row, sizeof row, "%-10llu %-9s %4d %6d %9d %10d %9d\n", static_cast<unsigned long long>(g.seed),
                  std::string(game::to_string(g.winner)).c_str(), g.last_day, g.consistency.declarations,
                  g.consistency.declarations_matched, v, g.fallbacks);
    out += row;
    decl += g.consistency.declarations;
    matched += g.consistency.declarations_matched;
    viol += v;
    fb += g.fallbacks;
    if (g.winner == game::Status::HumanWin) ++humans;
    if (g.winner == game::Status::WerewolfWin) ++wolves;
  }
  std::snprintf(row, sizeof row, "%-10s %-9s %4s %6d %9d %10d %9d\n", "total", "", "", decl, matched, viol, fb);
  out += row;
  int days = 0;
  for (const auto& g : games) days += g.last_day;
  std::snprintf(row, sizeof row, "games: %zu  human wins: %d  werewolf wins: %d  mean end day: %.2f\n", games.size(),
                humans, wolves, games.empty() ? 0.0 : static_cast<double>(days) / static_cast<double>(games.size()));
  out += row;
  for (const auto& g : games) {
    for (const auto& v : g.consistency.violations) {
      out += "  seed " + std::to_string(g.seed) + ": " + std::string(to_string(v.kind)) + " day " +
             std::to_string(v.day) + " " + v.detail + " (lines";
      for (int l : v.evidence_lines) out += " " + std::to_string(l);
      out += ")\n";
    }
  }
  return out;
}

}  // namespace wolf::analysis
