// Copyright 2026 The nlcubes Authors
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

#ifndef NLCUBES_TOOLS_CLI_H
#define NLCUBES_TOOLS_CLI_H

#include <ostream>
#include <string>
#include <vector>

namespace nlcubes::cli {

enum ExitCode : int {
    kPass = 0,
    kRefuted = 1,
    kUndecided = 2,
    kUsage = 3,
    kMalformedInput = 4,
};

/// Thread count for library calls: hardware concurrency, capped by
/// NONLOCAL_CUBES_THREADS when set to a positive integer.
int thread_budget();

/// Runs `nlcubes <args...>`; args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace nlcubes::cli

#endif
