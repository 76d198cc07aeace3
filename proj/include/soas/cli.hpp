// Copyright 2026 The soas Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SOAS_CLI_HPP
#define SOAS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace soas {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUndetermined = 2;
inline constexpr int kExitUsage = 64;

/// Command-line entry point. `args` excludes the program name. Input files
/// named "-" are read from `in`.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace soas

#endif  // SOAS_CLI_HPP
