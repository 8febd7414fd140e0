// Copyright 2026 The jetlie Authors
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

// Command-line front end: subcommand dispatch and report rendering.

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace jetlie {

/// Runs `jetlie <args...>` (args excludes the program name). Returns the exit
/// code: 0 on success, 1 on a failed verdict, 2 on usage or input errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Sample algebra and ODE files compiled into the binary, by file name.
std::optional<std::string_view> bundled_file(std::string_view name);
std::vector<std::string> bundled_file_names();

}  // namespace jetlie
