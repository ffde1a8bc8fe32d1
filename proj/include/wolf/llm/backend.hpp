#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wolf/game/types.hpp"

namespace wolf::llm {

enum class Purpose { Talk, Summary, VoteDeclaration, TargetDecision, AttackDecision };

std::string_view to_string(Purpose p);  // "talk", "summary", "vote_declaration", ...
std::optional<Purpose> purpose_from_string(std::string_view s);

/// Structured view of the caller's situation. Remote backends ignore it; the
/// scripted backend derives its completion from it.
struct ScriptDigest {
  std::string step;  // see steps.hpp
  game::AgentId self;
  game::Role role = game::Role::Villager;
  int day = 0;
  int turn = 0;
  std::string strategy_id;
  int options = 0;  // number of cards offered in a strategy selection step
  std::vector<game::AgentId> candidates;
  std::vector<game::AgentId> alive;
  std::optional<game::AgentId> focus;          // vote target, inferred seer, ...
  std::optional<game::AgentId> divine_focus;   // seer's declared divination target
  std::vector<game::TalkEntry> today;
  std::vector<game::DivineRecord> divinations;  // seer's own results
};

struct CompletionRequest {
  std::string prompt_text;
  int max_tokens = 512;
  double temperature = 0.7;
  std::string model_id;  // empty: resolved from the purpose map
  Purpose purpose = Purpose::Talk;
  std::optional<ScriptDigest> digest;
};

class BackendFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BackendConfig {
  std::string base_url = "https://api.openai.com";
  std::string path = "/v1/chat/completions";
  std::string api_key_env = "OPENAI_API_KEY";
  // Purpose name -> model; "default" covers the rest.
  std::map<std::string, std::string> models{{"default", "gpt-4-turbo"}, {"vote_declaration", "gpt-3.5-turbo"}};
  std::string system_prompt = "You are a player in a five-player Werewolf game.";
  std::chrono::milliseconds timeout{60000};
  int retry_count = 3;
  std::chrono::milliseconds retry_backoff{500};

  std::string model_for(Purpose p) const;
};

/// Default sampling temperature for a purpose: talk-like output is sampled,
/// decisions are greedy.
double default_temperature(Purpose p);

class Backend {
 public:
  virtual ~Backend() = default;
  /// Non-empty completion text, or BackendFailure.
  virtual std::string complete(const CompletionRequest& request) = 0;
};

/// Remote chat-completions endpoint (model, messages, temperature, max_tokens).
class HttpBackend final : public Backend {
 public:
  explicit HttpBackend(BackendConfig config);
  std::string complete(const CompletionRequest& request) override;

  /// The JSON body that would be POSTed for `request`.
  std::string request_body(const CompletionRequest& request) const;
  const BackendConfig& config() const { return config_; }

 private:
  BackendConfig config_;
  std::string api_key_;
};

/// Offline deterministic backend. Each completion is a pure function of
/// (digest, per-agent call counter, seed).
class ScriptedBackend final : public Backend {
 public:
  explicit ScriptedBackend(std::uint64_t seed) : seed_(seed) {}
  std::string complete(const CompletionRequest& request) override;

  std::uint64_t calls(game::AgentId agent) const;

 private:
  std::uint64_t seed_;
  mutable std::mutex mu_;
  std::map<int, std::uint64_t> counters_;
};

/// Canned role behaviour used by ScriptedBackend.
std::string scripted_policy(const ScriptDigest& digest, std::uint64_t seed, std::uint64_t counter);

/// Decorator that keeps every request and completion; used to audit prompts.
class RecordingBackend final : public Backend {
 public:
  struct Entry {
    CompletionRequest request;
    std::string completion;
  };

  explicit RecordingBackend(Backend& inner) : inner_(inner) {}
  std::string complete(const CompletionRequest& request) override;
  std::vector<Entry> entries() const;

 private:
  Backend& inner_;
  mutable std::mutex mu_;
  std::vector<Entry> entries_;
};

BackendConfig load_backend_config(const std::string& json_text);

}  // namespace wolf::llm
