// Copyright 2026 The specgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef SPECGAME_CLI_COMMANDS_H_
#define SPECGAME_CLI_COMMANDS_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "specgame/cli/config.h"

namespace specgame::cli {

// Entry point of the `specgame` executable. Returns the process exit code.
int run_command(int argc, const char* const* argv);
int run_command(const std::vector<std::string>& args);  // args[0] is the program name

// Worker threads: SPECGAME_THREADS when set, else the hardware concurrency.
int worker_threads();

// Analysis report written by `analyze`.
nlohmann::json analyze_report(const ExperimentConfig& config);

}  // namespace specgame::cli

#endif  // SPECGAME_CLI_COMMANDS_H_
