#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wolf/analysis/report.hpp"
#include "wolf/llm/backend.hpp"
#include "wolf/match/selfplay.hpp"

namespace wolf::analysis {

/// Contents of the --config JSON file:
///   {"backend": {...HTTP backend settings...},
///    "match": {"max_talk_turns_per_day": 10, "day0_talk_turns": 3,
///              "timeout_ms": 120000, "transport": "inprocess" | "socket"},
///    "assets_dir": "path"}
struct RunConfig {
  llm::BackendConfig http;
  int max_talk_turns_per_day = 10;
  int day0_talk_turns = 3;
  std::chrono::milliseconds timeout_per_request{120000};
  match::Transport transport = match::Transport::InProcess;
  std::filesystem::path assets_dir;  // empty: built-in default
};

RunConfig load_run_config(const std::filesystem::path& file);

enum class BackendKind { Scripted, Http };

struct RunOptions {
  int games = 1;
  std::uint64_t seed = 0;
  BackendKind backend = BackendKind::Scripted;
  RunConfig config;
  std::filesystem::path out_dir = "runs";
};

/// Plays seeds seed .. seed+games-1, writing game_<seed>.jsonl,
/// report.json and report.txt into out_dir.
MatchReport run_games(const RunOptions& options, std::ostream* progress = nullptr);

/// Reads a log file, or every *.jsonl in a directory (sorted by name).
MatchReport analyze_path(const std::filesystem::path& path);

}  // namespace wolf::analysis
