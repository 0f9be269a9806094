/*
   Copyright 2026 The mmwi Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "mmwi/config.hpp"

namespace mmwi {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode { kExitOk = 0, kExitInvalid = 1, kExitNoConvergence = 2 };

const std::vector<std::string>& subcommands();
std::string usage();

/// Runs one analysis and writes its CSV to config.output (or `out` when empty).
/// Diagnostics go to `err`. Returns an ExitCode.
int run(const std::string& subcommand, const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace mmwi
