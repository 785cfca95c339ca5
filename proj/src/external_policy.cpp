#include "nls/external_policy.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/un.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <thread>

#include "json.hpp"

namespace nls {

using nlohmann::ordered_json;

namespace {

ordered_json feature_array(const FeatureVector& f) { return f.normalized(); }

// Writes with SIGPIPE blocked for this thread so a vanished peer surfaces as
// EPIPE instead of terminating the process.
void write_all(int fd, std::string_view data) {
  sigset_t pipe_set, old_set;
  sigemptyset(&pipe_set);
  sigaddset(&pipe_set, SIGPIPE);
  pthread_sigmask(SIG_BLOCK, &pipe_set, &old_set);
  int error = 0;
  while (!data.empty()) {
    ssize_t n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      error = errno;
      break;
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
  if (error == EPIPE) {
    timespec zero{0, 0};
    sigtimedwait(&pipe_set, nullptr, &zero);
  }
  pthread_sigmask(SIG_SETMASK, &old_set, nullptr);
  if (error)
    throw ProtocolError(std::string("policy connection lost: ") + std::strerror(error));
}

class FdChannel : public LineChannel {
 public:
  FdChannel(int read_fd, int write_fd) : read_fd_(read_fd), write_fd_(write_fd) {}
  ~FdChannel() override { close_fds(); }

  void write_line(std::string_view line) override {
    std::string framed(line);
    framed.push_back('\n');
    write_all(write_fd_, framed);
  }

  std::string read_line(std::chrono::milliseconds timeout) override {
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    for (;;) {
      auto newline = buffer_.find('\n');
      if (newline != std::string::npos) {
        std::string line = buffer_.substr(0, newline);
        buffer_.erase(0, newline + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
      }
      const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
          deadline - std::chrono::steady_clock::now());
      if (left.count() <= 0)
        throw ProtocolError("policy timeout after " +
                            std::to_string(timeout.count()) + " ms");
      pollfd pfd{read_fd_, POLLIN, 0};
      int ready = ::poll(&pfd, 1, static_cast<int>(left.count()));
      if (ready < 0 && errno == EINTR) continue;
      if (ready < 0) throw ProtocolError("poll failed on policy connection");
      if (ready == 0) continue;
      char chunk[4096];
      ssize_t n = ::read(read_fd_, chunk, sizeof chunk);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) throw ProtocolError("policy closed the connection");
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

 protected:
  void close_fds() {
    if (write_fd_ >= 0 && write_fd_ != read_fd_) ::close(write_fd_);
    if (read_fd_ >= 0) ::close(read_fd_);
    read_fd_ = write_fd_ = -1;
  }

 private:
  int read_fd_;
  int write_fd_;
  std::string buffer_;
};

class ProcessChannel final : public FdChannel {
 public:
  ProcessChannel(pid_t pid, int read_fd, int write_fd)
      : FdChannel(read_fd, write_fd), pid_(pid) {}

  ~ProcessChannel() override {
    close_fds();
    for (int i = 0; i < 100; ++i) {
      if (::waitpid(pid_, nullptr, WNOHANG) != 0) return;
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    ::kill(pid_, SIGKILL);
    ::waitpid(pid_, nullptr, 0);
  }

 private:
  pid_t pid_;
};

}  // namespace

std::string hello_frame() {
  ordered_json j;
  j["type"] = "hello";
  j["protocol"] = "nls-policy";
  j["version"] = kProtocolVersion;
  return j.dump();
}

std::string reset_frame(const EpisodeInfo& info) {
  ordered_json j;
  j["type"] = "reset";
  j["instance"] = {{"id", info.instance_id},
                   {"num_jobs", info.num_jobs},
                   {"num_machines", info.num_machines},
                   {"lower_bound", info.lower_bound},
                   {"initial_makespan", info.initial_makespan}};
  j["action_set"] = std::string(to_string(info.action_set));
  j["action_count"] = action_count(info.action_set);
  j["episode_len"] = info.episode_len;
  j["context_length"] = info.context_length;
  auto names = ordered_json::array();
  for (auto name : FeatureVector::names()) names.push_back(std::string(name));
  j["feature_names"] = std::move(names);
  return j.dump();
}

std::string act_frame(const PolicyRequest& request) {
  ordered_json j;
  j["type"] = "act";
  j["step"] = request.step;
  j["rtg"] = request.rtg;
  j["rtg_scale"] = request.features.lower_bound;
  j["features"] = feature_array(request.features);
  j["raw_features"] = request.features.raw;
  j["action_set"] = std::string(to_string(request.action_set));
  j["action_count"] = action_count(request.action_set);

  const auto& w = request.window;
  auto features = ordered_json::array();
  for (const auto& f : w.features) features.push_back(feature_array(f));
  ordered_json window;
  window["context_length"] = w.context_length;
  window["rtg"] = w.rtg;
  window["features"] = std::move(features);
  window["actions"] = w.action;
  window["steps"] = w.step;
  window["mask"] = w.padded;
  j["window"] = std::move(window);
  return j.dump();
}

int parse_action_response(std::string_view line, ActionSet set) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception&) {
    throw ProtocolError("protocol violation: response is not JSON: '" +
                        std::string(line.substr(0, 200)) + "'");
  }
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw ProtocolError("protocol violation: response without a type");
  const auto type = j["type"].get<std::string>();
  if (type == "error")
    throw ProtocolError("policy error: " + j.value("message", std::string("(no message)")));
  if (type != "action")
    throw ProtocolError("protocol violation: unexpected frame type '" + type + "'");
  if (!j.contains("action_id") || !j["action_id"].is_number_integer())
    throw ProtocolError("protocol violation: action frame without integer action_id");
  const auto id = j["action_id"].get<long long>();
  if (id < 0 || id >= action_count(set))
    throw ProtocolError("invalid action: id " + std::to_string(id) + " not in [0, " +
                        std::to_string(action_count(set)) + ")");
  return static_cast<int>(id);
}

std::unique_ptr<LineChannel> spawn_process(const std::string& command) {
  int to_child[2];
  int from_child[2];
  if (::pipe2(to_child, O_CLOEXEC) != 0) throw ProtocolError("pipe failed");
  if (::pipe2(from_child, O_CLOEXEC) != 0) {
    ::close(to_child[0]);
    ::close(to_child[1]);
    throw ProtocolError("pipe failed");
  }
  pid_t pid = ::fork();
  if (pid < 0) {
    for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) ::close(fd);
    throw ProtocolError("fork failed");
  }
  if (pid == 0) {
    ::dup2(to_child[0], STDIN_FILENO);
    ::dup2(from_child[1], STDOUT_FILENO);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(to_child[0]);
  ::close(from_child[1]);
  return std::make_unique<ProcessChannel>(pid, from_child[0], to_child[1]);
}

std::unique_ptr<LineChannel> connect_unix_socket(const std::string& path) {
  sockaddr_un addr{};
  addr.sun_family = AF_UNIX;
  if (path.size() >= sizeof addr.sun_path)
    throw ProtocolError("socket path too long: " + path);
  std::memcpy(addr.sun_path, path.c_str(), path.size() + 1);
  int fd = ::socket(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0);
  if (fd < 0) throw ProtocolError("socket failed");
  if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
    ::close(fd);
    throw ProtocolError("cannot connect to policy socket " + path + ": " +
                        std::strerror(errno));
  }
  return std::make_unique<FdChannel>(fd, fd);
}

ExternalPolicy::ExternalPolicy(std::unique_ptr<LineChannel> channel,
                               std::chrono::milliseconds timeout)
    : channel_(std::move(channel)), timeout_(timeout) {
  channel_->write_line(hello_frame());
}

std::unique_ptr<ExternalPolicy> ExternalPolicy::open(const std::string& endpoint,
                                                     std::chrono::milliseconds timeout) {
  constexpr std::string_view unix_prefix = "unix:";
  if (endpoint.starts_with(unix_prefix))
    return std::make_unique<ExternalPolicy>(
        connect_unix_socket(endpoint.substr(unix_prefix.size())), timeout);
  return std::make_unique<ExternalPolicy>(spawn_process(endpoint), timeout);
}

void ExternalPolicy::begin_episode(const EpisodeInfo& info) {
  last_step_ = -1;
  channel_->write_line(reset_frame(info));
}

int ExternalPolicy::act(const PolicyRequest& request) {
  if (request.step <= last_step_)
    throw ProtocolError("protocol violation: step " + std::to_string(request.step) +
                        " after step " + std::to_string(last_step_));
  last_step_ = request.step;
  channel_->write_line(act_frame(request));
  return parse_action_response(channel_->read_line(timeout_), request.action_set);
}

}  // namespace nls
