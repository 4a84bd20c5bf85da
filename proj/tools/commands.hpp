// Copyright 2026 The LineageLab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>
#include <stdexcept>

namespace lineagelab::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 2,
  kMissingArtifact = 3,
  kInvariantBreach = 4,
};

/// A cross-strategy or oracle disagreement seen at run time.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses argv and runs one subcommand. Results go to `out`, diagnostics
/// and warnings to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lineagelab::cli
