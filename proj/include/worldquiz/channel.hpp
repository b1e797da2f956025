#pragma once

#include <memory>
#include <string>

#include "worldquiz/harness.hpp"

namespace worldquiz {

// Newline-delimited text transport to an external agent.
class LineChannel {
 public:
  virtual ~LineChannel() = default;
  // False once the peer is gone.
  virtual bool send(const std::string& line) = 0;
  virtual AgentReply receive(int timeout_ms) = 0;
};

class ChannelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Runs `command` under /bin/sh with its stdin and stdout piped. The child is
// terminated when the channel is destroyed.
std::unique_ptr<LineChannel> spawn_process(const std::string& command);
// Throws ChannelError if the connection fails.
std::unique_ptr<LineChannel> connect_tcp(const std::string& host, int port);

// Forwards every message verbatim and returns the peer's reply line.
class ExternalAgent : public Agent {
 public:
  ExternalAgent(std::unique_ptr<LineChannel> channel, int timeout_ms)
      : channel_(std::move(channel)), timeout_ms_(timeout_ms) {}

  AgentReply act(const nlohmann::json& message) override { return exchange(message); }
  AgentReply answer(const nlohmann::json& message, const Question&) override { return exchange(message); }

 private:
  AgentReply exchange(const nlohmann::json& message);

  std::unique_ptr<LineChannel> channel_;
  int timeout_ms_;
  bool dead_ = false;
};

}  // namespace worldquiz
