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

// Reference subset-scoring child for the external oracle protocol. Scores a
// subset S of [0, n) as |S| / n. The --mode flag selects deliberate
// protocol violations used by the tests.

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

namespace {

void Emit(const std::string& line) {
  std::cout << line << '\n';
  std::cout.flush();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"echo oracle: f(S) = |S| / n"};
  long long n = 6;
  std::string mode = "ok";
  app.add_option("--n", n, "ground set size");
  app.add_option("--mode", mode, "behaviour")
      ->check(CLI::IsMember({"ok", "exit-early", "bad-handshake", "zero-n",
                             "bad-response", "wrong-id", "negative", "slow-first",
                             "hang", "chatty"}));
  CLI11_PARSE(app, argc, argv);

  if (mode == "exit-early") {
    std::cerr << "echo-oracle: refusing to start" << std::endl;
    return 1;
  }
  if (mode == "bad-handshake") {
    Emit("hello");
    std::this_thread::sleep_for(std::chrono::seconds(5));
    return 0;
  }
  if (mode == "hang") {
    std::this_thread::sleep_for(std::chrono::seconds(60));
    return 0;
  }
  Emit(nlohmann::json{{"ready", true}, {"n", mode == "zero-n" ? 0 : n}}.dump());

  std::string line;
  bool first = true;
  while (std::getline(std::cin, line)) {
    const nlohmann::json req = nlohmann::json::parse(line, nullptr, false);
    if (req.is_discarded() || !req.contains("id") || !req.contains("subset")) {
      std::cerr << "echo-oracle: bad request: " << line << std::endl;
      return 2;
    }
    const auto id = req["id"].get<std::uint64_t>();
    const double value =
        n > 0 ? static_cast<double>(req["subset"].size()) / static_cast<double>(n)
              : 0.0;
    if (mode == "chatty") std::cerr << "scoring request " << id << std::endl;
    if (mode == "bad-response") {
      Emit("{\"id\": " + std::to_string(id) + ", \"value\": oops}");
      continue;
    }
    if (mode == "wrong-id") {
      Emit(nlohmann::json{{"id", id + 100}, {"value", value}}.dump());
      continue;
    }
    if (mode == "negative") {
      Emit(nlohmann::json{{"id", id}, {"value", -1.0}}.dump());
      continue;
    }
    if (mode == "slow-first" && first) {
      // Answer late, after the parent has re-sent under a new id.
      first = false;
      std::this_thread::sleep_for(std::chrono::milliseconds(400));
      Emit(nlohmann::json{{"id", id}, {"value", value}}.dump());
      continue;
    }
    first = false;
    Emit(nlohmann::json{{"id", id}, {"value", value}}.dump());
  }
  return 0;
}
