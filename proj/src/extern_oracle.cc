// Copyright 2026 The streamweak Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "streamweak/extern_oracle.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstring>
#include <sstream>

#include <nlohmann/json.hpp>

#include "streamweak/error.h"
#include "streamweak/log.h"

extern char** environ;

namespace streamweak {
namespace {

constexpr std::size_t kStderrTailBytes = 8192;

std::string Errno(const char* what) {
  return std::string(what) + ": " + std::strerror(errno);
}

void CloseFd(int& fd) {
  if (fd >= 0) ::close(fd);
  fd = -1;
}

std::string Truncate(const std::string& line) {
  constexpr std::size_t kMax = 200;
  return line.size() <= kMax ? line : line.substr(0, kMax) + "...";
}

}  // namespace

namespace protocol {

std::string FormatRequest(std::uint64_t id, std::span<const std::uint32_t> ids) {
  std::ostringstream out;
  out << "{\"id\": " << id << ", \"subset\": [";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out << ", ";
    out << ids[i];
  }
  out << "]}\n";
  return out.str();
}

std::size_t ParseHandshake(const std::string& line) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error&) {
    throw ConnectionError("malformed handshake line: " + Truncate(line));
  }
  if (!doc.is_object() || !doc.contains("ready") || !doc["ready"].is_boolean() ||
      !doc["ready"].get<bool>() || !doc.contains("n") ||
      !doc["n"].is_number_integer()) {
    throw ConnectionError("handshake must be {\"ready\": true, \"n\": <int>}, "
                          "got: " + Truncate(line));
  }
  const auto n = doc["n"].get<std::int64_t>();
  if (n < 1) {
    throw ParameterError("external oracle announced ground set size " +
                         std::to_string(n) + "; need n >= 1");
  }
  return static_cast<std::size_t>(n);
}

Response ParseResponse(const std::string& line) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error&) {
    throw OracleError("malformed response line from external oracle: " +
                      Truncate(line));
  }
  if (!doc.is_object() || !doc.contains("id") ||
      !doc["id"].is_number_unsigned() || !doc.contains("value") ||
      !doc["value"].is_number()) {
    throw OracleError("response must be {\"id\": <u64>, \"value\": <float>}, "
                      "got: " + Truncate(line));
  }
  Response r{doc["id"].get<std::uint64_t>(), doc["value"].get<double>()};
  if (!std::isfinite(r.value) || r.value < 0.0) {
    throw OracleError("external oracle returned invalid value in line: " +
                      Truncate(line));
  }
  return r;
}

}  // namespace protocol

void ExternOracleConfig::Validate() const {
  if (argv.empty() || argv.front().empty()) {
    throw ParameterError("external oracle needs a command");
  }
  if (timeout_ms <= 0) throw ParameterError("timeout must be positive");
}

ExternOracle::ExternOracle(const ExternOracleConfig& config) : config_(config) {}

std::unique_ptr<ExternOracle> ExternOracle::Connect(
    const ExternOracleConfig& config) {
  config.Validate();
  std::unique_ptr<ExternOracle> oracle(new ExternOracle(config));
  oracle->Spawn();

  std::optional<std::string> line;
  try {
    line = oracle->ReadLine(config.timeout_ms);
  } catch (const OracleError&) {
    const std::string err = oracle->CollectStderr();
    throw ConnectionError("external oracle exited before its handshake" +
                          (err.empty() ? std::string() : "; stderr:\n" + err));
  }
  if (!line) {
    oracle->Shutdown();
    const std::string err = oracle->captured_stderr();
    throw ConnectionError("timed out after " +
                          std::to_string(config.timeout_ms) +
                          " ms waiting for the external oracle handshake" +
                          (err.empty() ? std::string() : "; stderr:\n" + err));
  }
  oracle->n_ = protocol::ParseHandshake(*line);
  Log().info("external oracle pid {} ready with n = {}", oracle->pid_,
             oracle->n_);
  return oracle;
}

void ExternOracle::Spawn() {
  int in_pair[2];
  int out_pipe[2];
  int err_pipe[2];
  // The child's stdin is a socket so that writes can use MSG_NOSIGNAL and a
  // dead child surfaces as EPIPE instead of SIGPIPE.
  if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, in_pair) != 0) {
    throw ConnectionError(Errno("socketpair"));
  }
  if (::pipe2(out_pipe, O_CLOEXEC) != 0) {
    ::close(in_pair[0]);
    ::close(in_pair[1]);
    throw ConnectionError(Errno("pipe"));
  }
  if (::pipe2(err_pipe, O_CLOEXEC) != 0) {
    for (int fd : {in_pair[0], in_pair[1], out_pipe[0], out_pipe[1]}) ::close(fd);
    throw ConnectionError(Errno("pipe"));
  }
  ::shutdown(in_pair[0], SHUT_WR);

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, in_pair[0], STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, out_pipe[1], STDOUT_FILENO);
  posix_spawn_file_actions_adddup2(&actions, err_pipe[1], STDERR_FILENO);

  std::vector<char*> argv;
  for (std::string& arg : config_.argv) argv.push_back(arg.data());
  argv.push_back(nullptr);
  const int rc =
      ::posix_spawnp(&pid_, argv[0], &actions, nullptr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  ::close(in_pair[0]);
  ::close(out_pipe[1]);
  ::close(err_pipe[1]);
  to_child_ = in_pair[1];
  from_child_ = out_pipe[0];
  child_err_ = err_pipe[0];
  if (rc != 0) {
    pid_ = -1;
    CloseFd(to_child_);
    CloseFd(from_child_);
    CloseFd(child_err_);
    throw ConnectionError("cannot spawn '" + config_.argv.front() +
                          "': " + std::strerror(rc));
  }
  err_reader_ = std::thread([this, pid = pid_] { StderrLoop(pid); });
}

void ExternOracle::StderrLoop(pid_t pid) {
  std::string partial;
  char buf[4096];
  while (true) {
    const ssize_t got = ::read(child_err_, buf, sizeof buf);
    if (got < 0 && errno == EINTR) continue;
    if (got <= 0) break;
    partial.append(buf, static_cast<std::size_t>(got));
    std::size_t nl;
    while ((nl = partial.find('\n')) != std::string::npos) {
      const std::string line = partial.substr(0, nl);
      partial.erase(0, nl + 1);
      Log().info("[extern {}] {}", pid, line);
      std::lock_guard<std::mutex> lock(err_mu_);
      err_tail_ += line + '\n';
      if (err_tail_.size() > kStderrTailBytes) {
        err_tail_.erase(0, err_tail_.size() - kStderrTailBytes);
      }
    }
  }
  if (!partial.empty()) {
    Log().info("[extern {}] {}", pid, partial);
    std::lock_guard<std::mutex> lock(err_mu_);
    err_tail_ += partial + '\n';
  }
}

std::string ExternOracle::captured_stderr() const {
  std::lock_guard<std::mutex> lock(err_mu_);
  return err_tail_;
}

std::string ExternOracle::CollectStderr() {
  Shutdown();
  return captured_stderr();
}

void ExternOracle::SendLine(const std::string& line) {
  std::size_t sent = 0;
  while (sent < line.size()) {
    const ssize_t n =
        ::send(to_child_, line.data() + sent, line.size() - sent, MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n < 0) {
      throw OracleError(Errno("write to external oracle failed") +
                        "; stderr:\n" + captured_stderr());
    }
    sent += static_cast<std::size_t>(n);
  }
}

std::optional<std::string> ExternOracle::ReadLine(int timeout_ms) {
  const auto deadline =
      std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
  while (true) {
    if (const std::size_t nl = pending_.find('\n'); nl != std::string::npos) {
      std::string line = pending_.substr(0, nl);
      pending_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                          deadline - std::chrono::steady_clock::now())
                          .count();
    if (left <= 0) return std::nullopt;
    pollfd p{from_child_, POLLIN, 0};
    const int ready = ::poll(&p, 1, static_cast<int>(left));
    if (ready < 0 && errno == EINTR) continue;
    if (ready < 0) throw OracleError(Errno("poll on external oracle"));
    if (ready == 0) return std::nullopt;
    char buf[4096];
    const ssize_t got = ::read(from_child_, buf, sizeof buf);
    if (got < 0 && errno == EINTR) continue;
    if (got < 0) throw OracleError(Errno("read from external oracle"));
    if (got == 0) throw OracleError("external oracle closed its stdout");
    pending_.append(buf, static_cast<std::size_t>(got));
  }
}

double ExternOracle::Value(std::span<const ElementId> members) {
  std::lock_guard<std::mutex> lock(request_mu_);
  std::vector<std::uint32_t> ids = ToRawIds(members);
  std::sort(ids.begin(), ids.end());
  std::uint64_t id = ++next_id_;
  SendLine(protocol::FormatRequest(id, ids));
  bool retried = false;
  while (true) {
    std::optional<std::string> line;
    try {
      line = ReadLine(config_.timeout_ms);
    } catch (const OracleError& e) {
      throw OracleError(std::string(e.what()) + "; stderr:\n" +
                        captured_stderr());
    }
    if (!line) {
      if (retried) {
        throw OracleError("external oracle did not answer request " +
                          std::to_string(id) + " within " +
                          std::to_string(config_.timeout_ms) + " ms (retried once)");
      }
      Log().info("external oracle request {} timed out; retrying", id);
      abandoned_.insert(id);
      id = ++next_id_;
      SendLine(protocol::FormatRequest(id, ids));
      retried = true;
      continue;
    }
    const protocol::Response response = protocol::ParseResponse(*line);
    if (response.id == id) return response.value;
    if (abandoned_.erase(response.id) > 0) {
      Log().debug("discarding late answer to abandoned request {}", response.id);
      continue;
    }
    throw OracleError("external oracle answered id " +
                      std::to_string(response.id) + " while request " +
                      std::to_string(id) + " was pending");
  }
}

void ExternOracle::Shutdown() {
  CloseFd(to_child_);
  if (pid_ > 0) {
    int status = 0;
    bool reaped = false;
    for (int i = 0; i < 20 && !reaped; ++i) {
      reaped = ::waitpid(pid_, &status, WNOHANG) == pid_;
      if (!reaped) ::usleep(10'000);
    }
    if (!reaped) {
      ::kill(pid_, SIGTERM);
      for (int i = 0; i < 20 && !reaped; ++i) {
        reaped = ::waitpid(pid_, &status, WNOHANG) == pid_;
        if (!reaped) ::usleep(10'000);
      }
    }
    if (!reaped) {
      ::kill(pid_, SIGKILL);
      ::waitpid(pid_, &status, 0);
    }
    pid_ = -1;
  }
  if (err_reader_.joinable()) err_reader_.join();
  CloseFd(from_child_);
  CloseFd(child_err_);
}

ExternOracle::~ExternOracle() { Shutdown(); }

}  // namespace streamweak
