// Copyright 2026 The spinq Authors
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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace spinq::cli {

inline constexpr const char *kToolName = "spinq";
inline constexpr const char *kVersion = "0.1.0";

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitCrossCheck = 3;

enum class Format { Json, Csv };

/// Settings shared by every subcommand; stamped into every output.
struct RunConfig {
    std::uint64_t seed = 0;
    Format format = Format::Json;
    bool degrees = false;
    /// The invocation minus any --output flag, so re-running it reproduces the output.
    std::string echo;
};

/**
 * Parses `args` (args[0] is the program name), runs the subcommand and
 * writes its output to `out`, or to the --output file when given.
 * Diagnostics go to `err`. Returns the process exit code.
 */
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace spinq::cli
