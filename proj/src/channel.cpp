#include "worldquiz/channel.hpp"

#include <fcntl.h>
#include <netdb.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>

namespace worldquiz {

namespace {

// Buffered line reader over a file descriptor.
class FdReader {
 public:
  explicit FdReader(int fd) : fd_(fd) {}

  AgentReply read_line(int timeout_ms) {
    auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
    for (;;) {
      if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return {line, ""};
      }
      if (eof_) return {std::nullopt, "disconnect"};
      auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
      if (left.count() <= 0) return {std::nullopt, "timeout"};
      pollfd p{fd_, POLLIN, 0};
      int r = ::poll(&p, 1, static_cast<int>(left.count()));
      if (r < 0 && errno == EINTR) continue;
      if (r <= 0) return {std::nullopt, r == 0 ? "timeout" : "disconnect"};
      char chunk[4096];
      ssize_t n = ::read(fd_, chunk, sizeof chunk);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) {
        eof_ = true;
        continue;
      }
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

 private:
  int fd_;
  std::string buffer_;
  bool eof_ = false;
};

bool write_all(int fd, const std::string& data, bool socket) {
  std::size_t off = 0;
  while (off < data.size()) {
    ssize_t n = socket ? ::send(fd, data.data() + off, data.size() - off, MSG_NOSIGNAL)
                       : ::write(fd, data.data() + off, data.size() - off);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    off += static_cast<std::size_t>(n);
  }
  return true;
}

class ProcessChannel : public LineChannel {
 public:
  ProcessChannel(pid_t pid, int to_child, int from_child)
      : pid_(pid), to_child_(to_child), from_child_(from_child), reader_(from_child) {}

  ~ProcessChannel() override {
    ::close(to_child_);
    ::close(from_child_);
    ::kill(pid_, SIGTERM);
    ::waitpid(pid_, nullptr, 0);
  }

  bool send(const std::string& line) override { return write_all(to_child_, line + "\n", false); }
  AgentReply receive(int timeout_ms) override { return reader_.read_line(timeout_ms); }

 private:
  pid_t pid_;
  int to_child_;
  int from_child_;
  FdReader reader_;
};

class SocketChannel : public LineChannel {
 public:
  explicit SocketChannel(int fd) : fd_(fd), reader_(fd) {}
  ~SocketChannel() override { ::close(fd_); }

  bool send(const std::string& line) override { return write_all(fd_, line + "\n", true); }
  AgentReply receive(int timeout_ms) override { return reader_.read_line(timeout_ms); }

 private:
  int fd_;
  FdReader reader_;
};

}  // namespace

std::unique_ptr<LineChannel> spawn_process(const std::string& command) {
  // A dead child must surface as a failed write, not a signal.
  ::signal(SIGPIPE, SIG_IGN);
  int in[2];
  int out[2];
  if (::pipe2(in, O_CLOEXEC) != 0) throw ChannelError(std::strerror(errno));
  if (::pipe2(out, O_CLOEXEC) != 0) {
    ::close(in[0]);
    ::close(in[1]);
    throw ChannelError(std::strerror(errno));
  }
  pid_t pid = ::fork();
  if (pid < 0) throw ChannelError(std::strerror(errno));
  if (pid == 0) {
    ::dup2(in[0], STDIN_FILENO);
    ::dup2(out[1], STDOUT_FILENO);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(in[0]);
  ::close(out[1]);
  return std::make_unique<ProcessChannel>(pid, in[1], out[0]);
}

std::unique_ptr<LineChannel> connect_tcp(const std::string& host, int port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  std::string service = std::to_string(port);
  if (int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res); rc != 0)
    throw ChannelError("cannot resolve " + host + ": " + ::gai_strerror(rc));
  int fd = -1;
  for (addrinfo* a = res; a; a = a->ai_next) {
    fd = ::socket(a->ai_family, a->ai_socktype | SOCK_CLOEXEC, a->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, a->ai_addr, a->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0) throw ChannelError("cannot connect to " + host + ":" + service);
  return std::make_unique<SocketChannel>(fd);
}

AgentReply ExternalAgent::exchange(const nlohmann::json& message) {
  if (dead_) return {std::nullopt, "disconnect"};
  if (!channel_->send(message.dump())) {
    dead_ = true;
    return {std::nullopt, "disconnect"};
  }
  AgentReply r = channel_->receive(timeout_ms_);
  // A late reply would answer the wrong message, so a timeout ends the session.
  if (!r.line) dead_ = true;
  return r;
}

}  // namespace worldquiz
