#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wolf::agents {
class Agent;
}

namespace wolf::match {

/// Agent did not answer within the timeout, or failed while answering.
class AgentUnresponsive : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The connection itself is broken.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One protocol line out, at most one line back.
class AgentEndpoint {
 public:
  virtual ~AgentEndpoint() = default;
  virtual std::optional<std::string> exchange(std::string_view line, bool expect_reply,
                                              std::chrono::milliseconds timeout) = 0;
};

/// Calls the agent directly, still going through encode/decode.
class InProcessEndpoint : public AgentEndpoint {
 public:
  explicit InProcessEndpoint(agents::Agent& agent) : agent_(agent) {}
  std::optional<std::string> exchange(std::string_view line, bool expect_reply,
                                      std::chrono::milliseconds timeout) override;

 private:
  agents::Agent& agent_;
};

/// Newline-framed stream socket. Owns the descriptor.
class SocketEndpoint : public AgentEndpoint {
 public:
  explicit SocketEndpoint(int fd) : fd_(fd) {}
  ~SocketEndpoint() override;
  SocketEndpoint(const SocketEndpoint&) = delete;
  SocketEndpoint& operator=(const SocketEndpoint&) = delete;

  std::optional<std::string> exchange(std::string_view line, bool expect_reply,
                                      std::chrono::milliseconds timeout) override;

 private:
  std::optional<std::string> read_line(std::chrono::milliseconds timeout);

  int fd_;
  std::string buffer_;
  int stale_replies_ = 0;  // replies that arrived after their request timed out
};

/// Client side of a SocketEndpoint: answers requests until FINISH or EOF.
/// Takes ownership of `fd`.
void serve_agent(int fd, agents::Agent& agent);

}  // namespace wolf::match
