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

#ifndef STREAMWEAK_LOG_H_
#define STREAMWEAK_LOG_H_

#include <spdlog/logger.h>

namespace streamweak {

// Process-wide stderr logger. The level comes from STREAMWEAK_LOG
// (error, info or debug; default error) on first use.
spdlog::logger& Log();

}  // namespace streamweak

#endif  // STREAMWEAK_LOG_H_
