// Copyright 2026 The Percolation Games Authors
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

#ifndef PERCOLATION_CLI_HPP_
#define PERCOLATION_CLI_HPP_

#include <iosfwd>
#include <string>
#include <string_view>

namespace percolation {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCheckFailed = 3;

// git-style blob hash: SHA-1 of "blob <len>\0<content>", lower-case hex.
std::string content_hash(std::string_view content);

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);
int run_cli(int argc, const char* const* argv);

}  // namespace percolation

#endif  // PERCOLATION_CLI_HPP_
