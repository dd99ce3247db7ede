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

#ifndef PERCOLATION_VALUE_TABLE_IO_HPP_
#define PERCOLATION_VALUE_TABLE_IO_HPP_

#include <cstdint>
#include <iosfwd>

#include "percolation/solver.hpp"

namespace percolation {

// Binary value-table dump, all integers little-endian:
//
//   char[4]  magic "PGVT"
//   u32      format version (1)
//   u32      dim
//   u64      horizon n
//   i64[dim] origin
//   n + 1 times, for stage m = 1..n+1:
//     u64    state count
//     count times: i64[dim] state, f64 cumulative value V_{n-m+1}
//
// States within a stage are sorted lexicographically.
inline constexpr std::uint32_t kValueTableFormatVersion = 1;

void write_value_table(std::ostream& out, const ValueTable& table);
ValueTable read_value_table(std::istream& in);

}  // namespace percolation

#endif  // PERCOLATION_VALUE_TABLE_IO_HPP_
