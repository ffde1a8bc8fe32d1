#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "wolf/llm/backend.hpp"

namespace wolf::llm {

using nlohmann::json;

namespace {

bool transient(int status) { return status == 408 || status == 429 || status >= 500; }

std::string content_of(const std::string& body) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded()) throw BackendFailure("completion response is not JSON");
  try {
    std::string text = j.at("choices").at(0).at("message").at("content").get<std::string>();
    if (text.empty()) throw BackendFailure("empty completion");
    return text;
  } catch (const json::exception& e) {
    throw BackendFailure(std::string("unexpected completion shape: ") + e.what());
  }
}

}  // namespace

HttpBackend::HttpBackend(BackendConfig config) : config_(std::move(config)) {
  if (config_.base_url.empty()) throw ConfigError("base_url is empty");
  if (!config_.api_key_env.empty()) {
    if (const char* key = std::getenv(config_.api_key_env.c_str())) api_key_ = key;
  }
}

std::string HttpBackend::request_body(const CompletionRequest& request) const {
  const std::string model = request.model_id.empty() ? config_.model_for(request.purpose) : request.model_id;
  json body{
      {"model", model},
      {"messages", json::array({json{{"role", "system"}, {"content", config_.system_prompt}},
                                json{{"role", "user"}, {"content", request.prompt_text}}})},
      {"temperature", request.temperature},
      {"max_tokens", request.max_tokens},
  };
  return body.dump(-1, ' ', false, json::error_handler_t::replace);
}

std::string HttpBackend::complete(const CompletionRequest& request) {
  const std::string body = request_body(request);

  httplib::Client client(config_.base_url);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

  std::string last_error;
  auto backoff = config_.retry_backoff;
  for (int attempt = 0; attempt <= config_.retry_count; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    auto res = client.Post(config_.path, headers, body, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 200) return content_of(res->body);
    last_error = "HTTP " + std::to_string(res->status);
    if (!transient(res->status)) break;
  }
  throw BackendFailure("completion failed after retries: " + last_error);
}

}  // namespace wolf::llm
