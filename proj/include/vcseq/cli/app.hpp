// Copyright 2026 The vcseq Authors.
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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace vcseq::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUserError = 1,
  kExitInternalError = 2,
};

/// Runs one command line (without the program name). Machine-readable
/// results go to `out`, usage text and summaries to `err`.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Seed precedence: an explicit flag, then VC_SEED, then the fallback.
std::uint64_t ResolveSeed(const std::string& flag_value, std::uint64_t fallback);

}  // namespace vcseq::cli
