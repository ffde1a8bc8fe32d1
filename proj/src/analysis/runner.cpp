#include "wolf/analysis/runner.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "wolf/agents/assets.hpp"

namespace wolf::analysis {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw llm::ConfigError("cannot read " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& file, const std::string& data) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << data;
}

}  // namespace

RunConfig load_run_config(const fs::path& file) {
  RunConfig cfg;
  json j;
  try {
    j = json::parse(slurp(file));
  } catch (const json::exception& e) {
    throw llm::ConfigError(file.string() + ": " + e.what());
  }
  if (!j.is_object()) throw llm::ConfigError(file.string() + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    if (key != "backend" && key != "match" && key != "assets_dir") throw llm::ConfigError("unknown config key \"" + key + "\"");
  }
  try {
    if (j.contains("backend")) cfg.http = llm::load_backend_config(j["backend"].dump());
    if (j.contains("match")) {
      const auto& m = j["match"];
      for (const auto& [key, _] : m.items()) {
        if (key != "max_talk_turns_per_day" && key != "day0_talk_turns" && key != "timeout_ms" && key != "transport") {
          throw llm::ConfigError("unknown match key \"" + key + "\"");
        }
      }
      cfg.max_talk_turns_per_day = m.value("max_talk_turns_per_day", cfg.max_talk_turns_per_day);
      cfg.day0_talk_turns = m.value("day0_talk_turns", cfg.day0_talk_turns);
      cfg.timeout_per_request = std::chrono::milliseconds{m.value("timeout_ms", cfg.timeout_per_request.count())};
      const std::string transport = m.value("transport", std::string("inprocess"));
      if (transport == "inprocess") {
        cfg.transport = match::Transport::InProcess;
      } else if (transport == "socket") {
        cfg.transport = match::Transport::Socket;
      } else {
        throw llm::ConfigError("transport must be \"inprocess\" or \"socket\"");
      }
    }
    if (j.contains("assets_dir")) {
      fs::path dir = j["assets_dir"].get<std::string>();
      cfg.assets_dir = dir.is_relative() ? file.parent_path() / dir : dir;
    }
  } catch (const json::exception& e) {
    throw llm::ConfigError(file.string() + ": " + e.what());
  }
  if (cfg.max_talk_turns_per_day < 2) throw llm::ConfigError("max_talk_turns_per_day must be >= 2");
  if (cfg.day0_talk_turns < 1) throw llm::ConfigError("day0_talk_turns must be >= 1");
  return cfg;
}

MatchReport run_games(const RunOptions& options, std::ostream* progress) {
  if (options.games < 1) throw std::invalid_argument("--games must be at least 1");
  const auto& cfg = options.config;
  auto assets = std::make_shared<const agents::AgentAssets>(
      agents::load_assets(cfg.assets_dir.empty() ? agents::default_asset_dir() : cfg.assets_dir));
  std::optional<llm::HttpBackend> http;
  if (options.backend == BackendKind::Http) http.emplace(cfg.http);

  fs::create_directories(options.out_dir);
  MatchReport report;
  for (int i = 0; i < options.games; ++i) {
    match::SelfPlayOptions sp;
    sp.seed = options.seed + static_cast<std::uint64_t>(i);
    sp.max_talk_turns_per_day = cfg.max_talk_turns_per_day;
    sp.day0_talk_turns = cfg.day0_talk_turns;
    sp.assets = assets;
    sp.backend = http ? &*http : nullptr;
    sp.transport = cfg.transport;
    sp.timeout_per_request = cfg.timeout_per_request;
    const auto result = match::self_play(sp);

    const std::string name = "game_" + std::to_string(sp.seed) + ".jsonl";
    write_file(options.out_dir / name, match::to_jsonl(result.match.log));
    report.games.push_back(summarize_game(result.match.log, name));
    if (progress) {
      const auto& g = report.games.back();
      *progress << "seed " << sp.seed << ": " << game::to_string(g.winner) << " wins on day " << g.last_day << ", "
                << g.consistency.violations.size() << " violation(s)\n";
      for (std::size_t a = 0; a < result.diagnostics.size(); ++a) {
        for (const auto& note : result.diagnostics[a]) {
          *progress << "  " << game::agent_name(game::AgentId{static_cast<int>(a) + 1}) << ": " << note << "\n";
        }
      }
    }
  }
  write_file(options.out_dir / "report.json", report.to_json().dump(2) + "\n");
  write_file(options.out_dir / "report.txt", report.to_text());
  return report;
}

MatchReport analyze_path(const fs::path& path) {
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".jsonl") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }
  MatchReport report;
  for (const auto& f : files) {
    report.games.push_back(summarize_game(match::read_log_file(f.string()), f.filename().string()));
  }
  return report;
}

}  // namespace wolf::analysis
