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

#include <gtest/gtest.h>

#include <signal.h>

#include <chrono>
#include <thread>

#include "streamweak/error.h"
#include "streamweak/extern_oracle.h"
#include "streamweak/streak.h"
#include "test_util.h"

namespace streamweak {
namespace {

using testing::Ids;

ExternOracleConfig Echo(std::vector<std::string> extra = {}, int timeout_ms = 5000) {
  ExternOracleConfig c;
  c.argv = {STREAMWEAK_ECHO_ORACLE};
  for (auto& a : extra) c.argv.push_back(std::move(a));
  c.timeout_ms = timeout_ms;
  return c;
}

TEST(ProtocolTest, FormatAndParse) {
  const std::vector<std::uint32_t> ids{0, 2};
  EXPECT_EQ(protocol::FormatRequest(7, ids), "{\"id\": 7, \"subset\": [0, 2]}\n");
  EXPECT_EQ(protocol::FormatRequest(1, {}), "{\"id\": 1, \"subset\": []}\n");
  EXPECT_EQ(protocol::ParseHandshake("{\"ready\": true, \"n\": 6}"), 6u);
  EXPECT_THROW(protocol::ParseHandshake("{\"ready\": false, \"n\": 6}"),
               ConnectionError);
  EXPECT_THROW(protocol::ParseHandshake("garbage"), ConnectionError);
  EXPECT_THROW(protocol::ParseHandshake("{\"ready\": true, \"n\": 0}"),
               ParameterError);
  const protocol::Response r = protocol::ParseResponse("{\"id\": 3, \"value\": 0.5}");
  EXPECT_EQ(r.id, 3u);
  EXPECT_EQ(r.value, 0.5);
  for (const char* bad : {"{\"id\": 3}", "nope", "{\"id\": 3, \"value\": -1}",
                          "{\"id\": -3, \"value\": 1}"}) {
    try {
      protocol::ParseResponse(bad);
      FAIL() << bad;
    } catch (const OracleError& e) {
      EXPECT_NE(std::string(e.what()).find(bad), std::string::npos);
    }
  }
}

TEST(ExternConfigTest, Validation) {
  ExternOracleConfig c;
  EXPECT_THROW(c.Validate(), ParameterError);
  c.argv = {"x"};
  c.timeout_ms = 0;
  EXPECT_THROW(c.Validate(), ParameterError);
}

TEST(ExternOracleTest, HandshakeAndValues) {
  auto oracle = ExternOracle::Connect(Echo());
  EXPECT_EQ(oracle->size(), 6u);
  EXPECT_FALSE(oracle->concurrent_safe());
  EXPECT_NEAR(oracle->Value(Ids({2, 0})), 1.0 / 3.0, 1e-9);
  EXPECT_EQ(oracle->Value({}), 0.0);
  EXPECT_EQ(oracle->last_request_id(), 2u);
}

TEST(ExternOracleTest, RoundTripManyQueries) {
  auto oracle = ExternOracle::Connect(Echo({"--n", "10"}));
  Xoshiro256 rng(5);
  std::uint64_t last_id = oracle->last_request_id();
  for (int q = 0; q < 300; ++q) {
    const auto s = testing::FromMask(rng.Below(1 << 10));
    EXPECT_NEAR(oracle->Value(s), static_cast<double>(s.size()) / 10.0, 1e-9);
    EXPECT_GT(oracle->last_request_id(), last_id);
    last_id = oracle->last_request_id();
  }
}

TEST(ExternOracleTest, StreakMatchesBruteForce) {
  auto oracle = ExternOracle::Connect(Echo({"--n", "10"}));
  const RunResult r = RunStreak(*oracle, 3, 0.2, testing::Permuted(10, 1));
  EXPECT_NEAR(r.value, 0.3, 1e-9);
}

TEST(ExternOracleTest, ExitBeforeHandshakeIsConnectionError) {
  try {
    ExternOracle::Connect(Echo({"--mode", "exit-early"}));
    FAIL();
  } catch (const ConnectionError& e) {
    EXPECT_NE(std::string(e.what()).find("refusing to start"), std::string::npos)
        << e.what();
  }
}

TEST(ExternOracleTest, SpawnFailureIsConnectionError) {
  ExternOracleConfig c;
  c.argv = {"/nonexistent/streamweak-child"};
  EXPECT_THROW(ExternOracle::Connect(c), ConnectionError);
}

TEST(ExternOracleTest, HandshakeProblems) {
  EXPECT_THROW(ExternOracle::Connect(Echo({"--mode", "bad-handshake"})),
               ConnectionError);
  EXPECT_THROW(ExternOracle::Connect(Echo({"--mode", "zero-n"})), ParameterError);
  const auto start = std::chrono::steady_clock::now();
  EXPECT_THROW(ExternOracle::Connect(Echo({"--mode", "hang"}, 300)),
               ConnectionError);
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(5));
}

TEST(ExternOracleTest, ResponseProblemsAreOracleErrors) {
  for (const char* mode : {"bad-response", "wrong-id", "negative"}) {
    auto oracle = ExternOracle::Connect(Echo({"--mode", mode}));
    EXPECT_THROW(oracle->Value(Ids({1})), OracleError) << mode;
  }
}

TEST(ExternOracleTest, MalformedResponseNamesLine) {
  auto oracle = ExternOracle::Connect(Echo({"--mode", "bad-response"}));
  try {
    oracle->Value(Ids({1}));
    FAIL();
  } catch (const OracleError& e) {
    EXPECT_NE(std::string(e.what()).find("oops"), std::string::npos) << e.what();
  }
}

TEST(ExternOracleTest, TimeoutRetriesAndDiscardsLateAnswer) {
  auto oracle = ExternOracle::Connect(Echo({"--mode", "slow-first"}, 250));
  EXPECT_NEAR(oracle->Value(Ids({1, 2})), 2.0 / 6.0, 1e-12);
  EXPECT_EQ(oracle->last_request_id(), 2u);
  EXPECT_NEAR(oracle->Value(Ids({1})), 1.0 / 6.0, 1e-12);
}

TEST(ExternOracleTest, DeadChildIsOracleError) {
  auto oracle = ExternOracle::Connect(Echo());
  ::kill(oracle->pid(), SIGKILL);
  std::this_thread::sleep_for(std::chrono::milliseconds(100));
  EXPECT_THROW(oracle->Value(Ids({1})), OracleError);
}

TEST(ExternOracleTest, StderrIsCaptured) {
  auto oracle = ExternOracle::Connect(Echo({"--mode", "chatty"}));
  oracle->Value(Ids({1}));
  for (int i = 0; i < 50 && oracle->captured_stderr().empty(); ++i) {
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  EXPECT_NE(oracle->captured_stderr().find("scoring request 1"), std::string::npos);
}

}  // namespace
}  // namespace streamweak
