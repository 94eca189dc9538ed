// Copyright 2026 The trimcode Authors
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

#ifndef TRIMCODE_TOOLS_CLI_H_
#define TRIMCODE_TOOLS_CLI_H_

#include <map>
#include <ostream>
#include <string>

namespace trimcode::cli {

// Parses and runs one command. Returns the process exit code: 0 on success,
// 1 on a runtime error, 2 on a usage error. Every error writes exactly one
// line to `err`.
int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

// Splits a "key=value key=value" report line.
std::map<std::string, std::string> ParseRecord(const std::string& line);

}  // namespace trimcode::cli

#endif  // TRIMCODE_TOOLS_CLI_H_
