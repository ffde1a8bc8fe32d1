#include "wolf/match/selfplay.hpp"

#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <optional>
#include <thread>

#include "wolf/agents/agent.hpp"

namespace wolf::match {

std::uint64_t agent_seed(std::uint64_t match_seed, AgentId id) {
  // splitmix64 finalizer over (seed, id)
  std::uint64_t z = match_seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(id.value());
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

SelfPlayResult self_play(const SelfPlayOptions& options) {
  if (!options.assets) throw std::invalid_argument("self_play needs assets");
  std::optional<llm::ScriptedBackend> scripted;
  llm::Backend* backend = options.backend;
  if (!backend) backend = &scripted.emplace(options.seed);

  std::vector<std::unique_ptr<agents::Agent>> players;
  for (AgentId id : game::all_agents()) {
    players.push_back(std::make_unique<agents::Agent>(
        options.assets, *backend,
        agents::AgentOptions{agent_seed(options.seed, id), options.max_talk_turns_per_day, options.day0_talk_turns}));
  }

  MatchConfig config;
  config.seed = options.seed;
  config.max_talk_turns_per_day = options.max_talk_turns_per_day;
  config.day0_talk_turns = options.day0_talk_turns;
  config.timeout_per_request = options.timeout_per_request;
  config.on_send = options.on_send;

  std::vector<std::thread> clients;
  auto join_all = [&] {
    for (auto& t : clients) {
      if (t.joinable()) t.join();
    }
  };
  SelfPlayResult result;
  try {
    for (std::size_t i = 0; i < players.size(); ++i) {
      if (options.transport == Transport::InProcess) {
        config.endpoints[i] = std::make_shared<InProcessEndpoint>(*players[i]);
        continue;
      }
      int fds[2];
      if (::socketpair(AF_UNIX, SOCK_STREAM, 0, fds) != 0) {
        throw TransportError(std::string("socketpair: ") + std::strerror(errno));
      }
      config.endpoints[i] = std::make_shared<SocketEndpoint>(fds[0]);
      clients.emplace_back(serve_agent, fds[1], std::ref(*players[i]));
    }
    result.match = run_match(std::move(config));
  } catch (...) {
    // Closing our ends makes the client threads see EOF.
    config.endpoints = {};
    join_all();
    throw;
  }
  join_all();
  for (std::size_t i = 0; i < players.size(); ++i) result.diagnostics[i] = players[i]->diagnostics();
  return result;
}

}  // namespace wolf::match
