#include "wolf/match/endpoint.hpp"

#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "wolf/agents/agent.hpp"
#include "wolf/protocol/message.hpp"

namespace wolf::match {

namespace {

void write_all(int fd, std::string_view data) {
  while (!data.empty()) {
    const ssize_t n = ::send(fd, data.data(), data.size(), MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw TransportError(std::string("send: ") + std::strerror(errno));
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
}

// Blocking line reader for the client side.
class LineReader {
 public:
  explicit LineReader(int fd) : fd_(fd) {}
  std::optional<std::string> next() {
    for (;;) {
      if (auto pos = buffer_.find('\n'); pos != std::string::npos) {
        std::string line = buffer_.substr(0, pos);
        buffer_.erase(0, pos + 1);
        return line;
      }
      char chunk[4096];
      const ssize_t n = ::read(fd_, chunk, sizeof chunk);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) return std::nullopt;
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

 private:
  int fd_;
  std::string buffer_;
};

}  // namespace

std::optional<std::string> InProcessEndpoint::exchange(std::string_view line, bool expect_reply,
                                                       std::chrono::milliseconds /*timeout*/) {
  std::optional<protocol::Reply> reply;
  try {
    reply = agent_.handle(protocol::decode(line));
  } catch (const std::exception& e) {
    throw AgentUnresponsive(std::string("agent failed: ") + e.what());
  }
  if (!expect_reply) return std::nullopt;
  if (!reply) throw AgentUnresponsive("agent gave no reply");
  return protocol::encode(*reply);
}

SocketEndpoint::~SocketEndpoint() {
  if (fd_ >= 0) ::close(fd_);
}

std::optional<std::string> SocketEndpoint::read_line(std::chrono::milliseconds timeout) {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  for (;;) {
    if (auto pos = buffer_.find('\n'); pos != std::string::npos) {
      std::string line = buffer_.substr(0, pos);
      buffer_.erase(0, pos + 1);
      return line;
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) return std::nullopt;
    pollfd p{fd_, POLLIN, 0};
    const int r = ::poll(&p, 1, static_cast<int>(left.count()));
    if (r < 0) {
      if (errno == EINTR) continue;
      throw TransportError(std::string("poll: ") + std::strerror(errno));
    }
    if (r == 0) return std::nullopt;
    char chunk[4096];
    const ssize_t n = ::read(fd_, chunk, sizeof chunk);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw TransportError(std::string("read: ") + std::strerror(errno));
    }
    if (n == 0) throw TransportError("agent closed the connection");
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

std::optional<std::string> SocketEndpoint::exchange(std::string_view line, bool expect_reply,
                                                    std::chrono::milliseconds timeout) {
  std::string framed(line);
  framed += '\n';
  write_all(fd_, framed);
  if (!expect_reply) return std::nullopt;
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  for (;;) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    auto reply = read_line(std::max(left, std::chrono::milliseconds{0}));
    if (!reply) {
      ++stale_replies_;
      throw AgentUnresponsive("no reply within " + std::to_string(timeout.count()) + " ms");
    }
    if (stale_replies_ > 0) {
      --stale_replies_;
      continue;
    }
    return reply;
  }
}

void serve_agent(int fd, agents::Agent& agent) {
  LineReader reader(fd);
  while (auto line = reader.next()) {
    protocol::Message message;
    try {
      message = protocol::decode(*line);
    } catch (const protocol::MalformedMessage&) {
      continue;
    }
    std::optional<protocol::Reply> reply;
    try {
      reply = agent.handle(message);
    } catch (const std::exception&) {
      reply.reset();
    }
    if (message.response_expected()) {
      // An empty object keeps the stream in step; the orchestrator treats it as malformed.
      const std::string out = (reply ? protocol::encode(*reply) : std::string("{}")) + "\n";
      try {
        write_all(fd, out);
      } catch (const TransportError&) {
        break;
      }
    }
    if (message.kind == protocol::MessageKind::Finish) break;
  }
  ::close(fd);
}

}  // namespace wolf::match
