// Copyright 2026 The unicover Authors
//
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace unicover::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  /// Bad flags, unreadable input, malformed recipe or word.
  kUsageError = 1,
  /// Well-formed input that fails validation (bad metric, degenerate recipe,
  /// unusable scale).
  kValidationError = 2,
  /// The command ran but at least one requested verdict is Unknown or an
  /// enumeration hit its cap.
  kUnknownResult = 3,
};

/// Runs one command. `args` excludes the program name. Reports go to `out`
/// (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace unicover::cli
