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

#include <iostream>
#include <memory>

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "vcseq/cli/app.hpp"

int main(int argc, char** argv) {
  // Standard output carries CSV only; log lines go to standard error.
  spdlog::set_default_logger(std::make_shared<spdlog::logger>(
      "vcseq", std::make_shared<spdlog::sinks::stderr_sink_st>()));
  spdlog::set_pattern("[%l] %v");
  return vcseq::cli::Run({argv + 1, argv + argc}, std::cout, std::cerr);
}
