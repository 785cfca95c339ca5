#pragma once

#include <chrono>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nls/policy.hpp"

namespace nls {

/// Line-delimited JSON policy protocol, version 1.
///
/// Engine to policy, one object per line:
///   {"type":"hello","protocol":"nls-policy","version":1}     once on connect
///   {"type":"reset","instance":{...},"action_set":..,...}   once per episode
///   {"type":"act","step":t,"rtg":R,"features":[..],"window":{..},...}
/// Policy to engine, exactly one line per act frame:
///   {"type":"action","action_id":k}
///   {"type":"error","message":"..."}
/// hello and reset are notifications and get no reply. Closing the policy's
/// standard input ends the session.
inline constexpr int kProtocolVersion = 1;

/// Timeout, malformed frame, policy-side error or an invalid action id.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string hello_frame();
std::string reset_frame(const EpisodeInfo& info);
std::string act_frame(const PolicyRequest& request);

/// Validates a response line against the action set. Throws ProtocolError
/// with "invalid action" for ids out of range and "protocol violation" for
/// anything malformed.
int parse_action_response(std::string_view line, ActionSet set);

/// Bidirectional line channel with a read timeout.
class LineChannel {
 public:
  virtual ~LineChannel() = default;
  virtual void write_line(std::string_view line) = 0;
  /// Throws ProtocolError on timeout or end of stream.
  virtual std::string read_line(std::chrono::milliseconds timeout) = 0;
};

/// Runs `command` through /bin/sh -c with pipes on its stdin and stdout.
std::unique_ptr<LineChannel> spawn_process(const std::string& command);

/// Connects to a listening Unix domain socket.
std::unique_ptr<LineChannel> connect_unix_socket(const std::string& path);

/// Policy answered by another process speaking the protocol above.
class ExternalPolicy final : public Policy {
 public:
  static constexpr std::chrono::milliseconds kDefaultTimeout{10000};

  explicit ExternalPolicy(std::unique_ptr<LineChannel> channel,
                          std::chrono::milliseconds timeout = kDefaultTimeout);

  /// "unix:<path>" connects to a socket, anything else is a shell command.
  static std::unique_ptr<ExternalPolicy> open(
      const std::string& endpoint,
      std::chrono::milliseconds timeout = kDefaultTimeout);

  void begin_episode(const EpisodeInfo& info) override;
  int act(const PolicyRequest& request) override;

 private:
  std::unique_ptr<LineChannel> channel_;
  std::chrono::milliseconds timeout_;
  int last_step_ = -1;
};

}  // namespace nls
