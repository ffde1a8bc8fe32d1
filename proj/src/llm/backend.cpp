#include <array>
#include <utility>

#include "json.hpp"
#include "wolf/llm/backend.hpp"

namespace wolf::llm {

namespace {

constexpr std::array<std::pair<Purpose, std::string_view>, 5> kPurposeNames{{
    {Purpose::Talk, "talk"},
    {Purpose::Summary, "summary"},
    {Purpose::VoteDeclaration, "vote_declaration"},
    {Purpose::TargetDecision, "target_decision"},
    {Purpose::AttackDecision, "attack_decision"},
}};

}  // namespace

std::string_view to_string(Purpose p) {
  for (const auto& [purpose, name] : kPurposeNames) {
    if (purpose == p) return name;
  }
  return "talk";
}

std::optional<Purpose> purpose_from_string(std::string_view s) {
  for (const auto& [purpose, name] : kPurposeNames) {
    if (name == s) return purpose;
  }
  return std::nullopt;
}

std::string BackendConfig::model_for(Purpose p) const {
  if (auto it = models.find(std::string(to_string(p))); it != models.end()) return it->second;
  if (auto it = models.find("default"); it != models.end()) return it->second;
  throw ConfigError("no model configured for purpose '" + std::string(to_string(p)) + "' and no default");
}

double default_temperature(Purpose p) {
  switch (p) {
    case Purpose::Talk:
    case Purpose::VoteDeclaration:
      return 0.7;
    case Purpose::Summary:
    case Purpose::TargetDecision:
    case Purpose::AttackDecision:
      return 0.0;
  }
  return 0.0;
}

std::string RecordingBackend::complete(const CompletionRequest& request) {
  std::string out = inner_.complete(request);
  std::lock_guard lock(mu_);
  entries_.push_back({request, out});
  return out;
}

std::vector<RecordingBackend::Entry> RecordingBackend::entries() const {
  std::lock_guard lock(mu_);
  return entries_;
}

BackendConfig load_backend_config(const std::string& json_text) {
  using nlohmann::json;
  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ConfigError("backend config is not a JSON object");

  BackendConfig cfg;
  try {
    if (j.contains("api_key")) throw ConfigError("api keys are read from the environment; use \"api_key_env\"");
    cfg.base_url = j.value("base_url", cfg.base_url);
    cfg.path = j.value("path", cfg.path);
    cfg.api_key_env = j.value("api_key_env", cfg.api_key_env);
    cfg.system_prompt = j.value("system_prompt", cfg.system_prompt);
    cfg.timeout = std::chrono::milliseconds(j.value("timeout_ms", static_cast<long>(cfg.timeout.count())));
    cfg.retry_count = j.value("retry_count", cfg.retry_count);
    cfg.retry_backoff =
        std::chrono::milliseconds(j.value("retry_backoff_ms", static_cast<long>(cfg.retry_backoff.count())));
    if (j.contains("models")) {
      cfg.models.clear();
      for (const auto& [key, value] : j.at("models").items()) {
        if (key != "default" && !purpose_from_string(key)) throw ConfigError("unknown purpose in models: " + key);
        cfg.models[key] = value.get<std::string>();
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("backend config: ") + e.what());
  }
  if (cfg.retry_count < 0) throw ConfigError("retry_count must be >= 0");
  return cfg;
}

}  // namespace wolf::llm
