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

#ifndef STREAMWEAK_EXTERN_ORACLE_H_
#define STREAMWEAK_EXTERN_ORACLE_H_

#include <sys/types.h>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "streamweak/oracle.h"
#include "streamweak/types.h"

namespace streamweak {

// Line protocol spoken with a subset-scoring child process. UTF-8, one JSON
// object per LF-terminated line:
//   child -> parent, once:  {"ready": true, "n": <positive int>}
//   parent -> child:        {"id": <u64>, "subset": [<sorted ids>]}
//   child -> parent:        {"id": <u64>, "value": <finite float >= 0>}
// stderr of the child is forwarded to the log.
namespace protocol {

std::string FormatRequest(std::uint64_t id, std::span<const std::uint32_t> ids);

// Returns n. Throws ConnectionError on malformed lines and ParameterError
// for n < 1.
std::size_t ParseHandshake(const std::string& line);

struct Response {
  std::uint64_t id;
  double value;
};
// Throws OracleError naming the line on malformed or invalid responses.
Response ParseResponse(const std::string& line);

}  // namespace protocol

struct ExternOracleConfig {
  std::vector<std::string> argv;  // command and arguments
  int timeout_ms = 30000;         // per request and for the handshake

  void Validate() const;
};

// A Valuation backed by an external process. No guarantee of monotonicity
// or submodularity is implied: the value is whatever the child reports.
// Requests are serialized; the oracle is not concurrent-safe.
class ExternOracle final : public Valuation {
 public:
  // Spawns the child and waits for its handshake.
  static std::unique_ptr<ExternOracle> Connect(const ExternOracleConfig& config);

  ~ExternOracle() override;
  ExternOracle(const ExternOracle&) = delete;
  ExternOracle& operator=(const ExternOracle&) = delete;

  std::size_t size() const override { return n_; }
  // On timeout the request is re-sent once under a fresh id; a late answer
  // to the abandoned id is discarded.
  double Value(std::span<const ElementId> members) override;
  bool concurrent_safe() const override { return false; }
  std::string name() const override { return "extern"; }

  std::uint64_t last_request_id() const { return next_id_; }
  pid_t pid() const { return pid_; }
  std::string captured_stderr() const;

 private:
  explicit ExternOracle(const ExternOracleConfig& config);

  void Spawn();
  void SendLine(const std::string& line);
  // nullopt on timeout; throws OracleError on EOF.
  std::optional<std::string> ReadLine(int timeout_ms);
  void StderrLoop(pid_t pid);
  void Shutdown();
  std::string CollectStderr();

  ExternOracleConfig config_;
  std::size_t n_ = 0;
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  int child_err_ = -1;
  std::string pending_;
  std::uint64_t next_id_ = 0;
  std::set<std::uint64_t> abandoned_;
  std::mutex request_mu_;

  mutable std::mutex err_mu_;
  std::string err_tail_;
  std::thread err_reader_;
};

}  // namespace streamweak

#endif  // STREAMWEAK_EXTERN_ORACLE_H_
