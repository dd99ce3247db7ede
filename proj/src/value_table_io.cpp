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

#include "percolation/value_table_io.hpp"

#include <bit>
#include <cstring>
#include <istream>
#include <ostream>

namespace percolation {
namespace {

constexpr char kMagic[4] = {'P', 'G', 'V', 'T'};

template <class T>
void put(std::ostream& out, T value) {
  static_assert(std::endian::native == std::endian::little,
                "big-endian hosts are not supported");
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.write(buf, sizeof(T));
}

template <class T>
T get(std::istream& in) {
  char buf[sizeof(T)];
  if (!in.read(buf, sizeof(T))) {
    throw ConfigError("truncated value table");
  }
  T value;
  std::memcpy(&value, buf, sizeof(T));
  return value;
}

}  // namespace

void write_value_table(std::ostream& out, const ValueTable& table) {
  out.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, kValueTableFormatVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(table.origin().dim()));
  put<std::uint64_t>(out, table.horizon());
  for (Coord c : table.origin().coords()) put<std::int64_t>(out, c);
  for (std::size_t m = 1; m <= table.horizon() + 1; ++m) {
    const auto entries = table.entries(m);
    put<std::uint64_t>(out, entries.size());
    for (const auto& [z, v] : entries) {
      for (Coord c : z.coords()) put<std::int64_t>(out, c);
      put<double>(out, v);
    }
  }
  if (!out) throw Error("failed writing value table");
}

ValueTable read_value_table(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw ConfigError("not a value table (bad magic)");
  }
  const auto version = get<std::uint32_t>(in);
  if (version != kValueTableFormatVersion) {
    throw ConfigError("unsupported value table version " +
                      std::to_string(version));
  }
  const auto dim = get<std::uint32_t>(in);
  const auto horizon = get<std::uint64_t>(in);
  if (dim == 0 || horizon == 0) throw ConfigError("corrupt value table header");
  std::vector<Coord> origin(dim);
  for (auto& c : origin) c = get<std::int64_t>(in);

  std::vector<StageValues> stages;
  for (std::uint64_t m = 1; m <= horizon + 1; ++m) {
    const auto count = get<std::uint64_t>(in);
    if (count == 0) throw ConfigError("empty stage in value table");
    std::vector<LatticePoint> points;
    std::vector<double> values;
    for (std::uint64_t k = 0; k < count; ++k) {
      std::vector<Coord> z(dim);
      for (auto& c : z) c = get<std::int64_t>(in);
      points.emplace_back(std::move(z));
      values.push_back(get<double>(in));
    }
    StageValues s;
    s.layer.box = Box::hull(points);
    const auto volume = s.layer.box.volume();
    s.layer.reachable.assign(volume, 0);
    s.cumulative.assign(volume, 0.0);
    for (std::size_t k = 0; k < points.size(); ++k) {
      const std::size_t idx = s.layer.box.index(points[k].coords());
      s.layer.reachable[idx] = 1;
      s.cumulative[idx] = values[k];
    }
    s.layer.count = points.size();
    stages.push_back(std::move(s));
  }
  return ValueTable(horizon, LatticePoint(std::move(origin)), std::move(stages));
}

}  // namespace percolation
