// Command-line front end: run self-play matches, analyze logs, print transcripts.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "wolf/analysis/runner.hpp"
#include "wolf/analysis/transcript.hpp"

namespace fs = std::filesystem;
using namespace wolf;

int main(int argc, char** argv) {
  CLI::App app{"Five-player Werewolf self-play"};
  app.require_subcommand(1);

  int games = 1;
  std::uint64_t seed = 0;
  analysis::BackendKind backend = analysis::BackendKind::Scripted;
  std::string config_path;
  std::string out_dir = "runs";
  bool strict = false;
  const std::map<std::string, analysis::BackendKind> backends{{"scripted", analysis::BackendKind::Scripted},
                                                              {"http", analysis::BackendKind::Http}};

  auto* run = app.add_subcommand("run", "Play matches and write JSONL logs plus a report");
  run->add_option("--games", games, "Number of matches")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "Seed of the first match; match i uses seed + i");
  run->add_option("--backend", backend, "Completion backend")->transform(CLI::CheckedTransformer(backends));
  run->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  run->add_option("--out-dir", out_dir, "Output directory");
  run->add_flag("--strict", strict, "Exit with status 3 if any violation is found");

  std::string log_path;
  std::string report_path;
  auto* analyze = app.add_subcommand("analyze", "Check logs for consistency violations");
  analyze->add_option("path", log_path, "Log file or directory of logs")->required()->check(CLI::ExistingPath);
  analyze->add_option("--out", report_path, "Write the JSON report here instead of stdout");
  analyze->add_flag("--strict", strict, "Exit with status 3 if any violation is found");

  bool show_over = false;
  bool hide_roles = false;
  auto* transcript = app.add_subcommand("transcript", "Print a readable transcript of one log");
  transcript->add_option("log", log_path, "Log file")->required()->check(CLI::ExistingFile);
  transcript->add_flag("--show-over", show_over, "Include Over lines");
  transcript->add_flag("--hide-roles", hide_roles, "Do not reveal roles next to speakers");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      analysis::RunOptions opts;
      opts.games = games;
      opts.seed = seed;
      opts.backend = backend;
      opts.out_dir = out_dir;
      if (!config_path.empty()) opts.config = analysis::load_run_config(config_path);
      const auto report = analysis::run_games(opts, &std::cerr);
      std::cout << report.to_text();
      return strict && report.total_violations() > 0 ? 3 : 0;
    }
    if (*analyze) {
      const auto report = analysis::analyze_path(log_path);
      const std::string json = report.to_json().dump(2) + "\n";
      if (report_path.empty()) {
        std::cout << json;
      } else {
        std::ofstream(report_path) << json;
        std::cout << report.to_text();
      }
      return strict && report.total_violations() > 0 ? 3 : 0;
    }
    if (*transcript) {
      std::cout << analysis::render_transcript(match::read_log_file(log_path), {show_over, !hide_roles});
      return 0;
    }
  } catch (const llm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
