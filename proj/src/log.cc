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

#include "streamweak/log.h"

#include <cstdlib>
#include <memory>
#include <string>

#include <spdlog/sinks/stdout_sinks.h>

namespace streamweak {

spdlog::logger& Log() {
  static std::shared_ptr<spdlog::logger> logger = [] {
    auto sink = std::make_shared<spdlog::sinks::stderr_sink_mt>();
    auto l = std::make_shared<spdlog::logger>("streamweak", sink);
    l->set_pattern("[%l] %v");
    spdlog::level::level_enum level = spdlog::level::err;
    if (const char* env = std::getenv("STREAMWEAK_LOG")) {
      const std::string value(env);
      if (value == "info") level = spdlog::level::info;
      if (value == "debug") level = spdlog::level::debug;
    }
    l->set_level(level);
    return l;
  }();
  return *logger;
}

}  // namespace streamweak
